import pytest

from manifoldstats import boundary_simplex, cyclic_bundle
from manifoldstats.canonical import digest
from manifoldstats.errors import ParseError
from manifoldstats.utils import (format_complex, parse_complex, parse_face,
                                 parse_pairs, parse_range, read_complex,
                                 write_complex)


class TestFacetFile:

    def test_round_trip(self, tmp_path):
        path = str(tmp_path / "bundle.tri")
        K = cyclic_bundle(9)
        write_complex(K, path, ["comment"])
        read = read_complex(path)
        assert read == K
        assert format_complex(read, ["comment"]) == format_complex(
            K, ["comment"])
        assert digest(read) == digest(K)

    def test_comments_and_blank_lines(self):
        text = "# sphere\n\nd=3 n=5\n" + "\n".join(
            " ".join(str(v) for v in f) + "  # facet"
            for f in boundary_simplex().facets)
        assert parse_complex(text) == boundary_simplex()

    def test_parse_errors(self, subtests):
        cases = [
            ("1 2 3 4\n", 1),
            ("d=3 n=5\n1 2 3\n", 2),
            ("d=3 n=5\n\n1 2 x 4\n", 3),
            ("d=3 n=5\n1 2 3 0\n", 2),
            ("# nothing\n", 1),
        ]
        for text, line_number in cases:
            with subtests.test(msg=repr(text)):
                with pytest.raises(ParseError) as error:
                    parse_complex(text)
                assert error.value.line_number == line_number

    def test_header_vertex_count_mismatch(self):
        text = format_complex(boundary_simplex()).replace("n=5", "n=6")
        with pytest.raises(ParseError):
            parse_complex(text)


class TestArguments:

    def test_parse_face(self):
        assert parse_face("3,1,2") == (1, 2, 3)

    def test_parse_range(self):
        assert parse_range("51:54") == (51, 54)
        assert parse_range("7") == (7, 7)
        with pytest.raises(ValueError):
            parse_range("5:4")

    def test_parse_pairs(self):
        assert parse_pairs("1:6,2:7") == [(1, 6), (2, 7)]
        with pytest.raises(ValueError):
            parse_pairs("1-6")

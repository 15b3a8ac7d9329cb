from manifoldstats.__main__ import main
from manifoldstats.utils import parse_complex

from .fixtures_utils import FixturesUtils

fixtures = FixturesUtils()
SIMPLEX = fixtures.facet_path("boundary_simplex")
STACKED = fixtures.facet_path("stacked_sphere_6")
BUNDLE = fixtures.facet_path("cyclic_bundle_9")


def test_stats(capsys):
    assert main(["stats", SIMPLEX]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "f=(5,10,10,5) g=(1,0,0)"
    assert "irreducibility: boundary of simplex" in out


def test_stats_of_bundle(capsys):
    assert main(["stats", BUNDLE]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "f=(9,36,54,27) g=(1,4,10)"
    assert "mu: -4.5" in out
    assert "irreducibility: not g2-irreducible" in out


def test_validate(capsys, tmp_path):
    assert main(["validate", SIMPLEX]) == 0
    assert capsys.readouterr().out == "valid f=(5,10,10,5)\n"
    broken = tmp_path / "broken.tri"
    broken.write_text("d=3 n=5\n1 2 3 4\n1 2 3 5\n1 2 4 5\n1 3 4 5\n",
                      encoding="utf-8")
    assert main(["validate", str(broken)]) == 1


def test_domain_errors_exit_with_one(capsys, tmp_path):
    assert main(["stats", str(tmp_path / "missing.tri")]) == 1
    assert capsys.readouterr().err.startswith("error:")
    assert main(["flip", SIMPLEX, "--face", "1,2,3"]) == 1
    assert "B is face" in capsys.readouterr().err
    assert main(["homology", SIMPLEX, "--prime", "4"]) == 1
    garbage = tmp_path / "garbage.tri"
    garbage.write_text("d=3 n=5\n1 2 x 4\n", encoding="utf-8")
    assert main(["canon", str(garbage)]) == 1
    assert "line 2" in capsys.readouterr().err


def test_usage_errors_exit_with_two(capsys):
    assert main([]) == 2
    assert main(["flip", SIMPLEX, "--weights", "1,2"]) == 2
    assert main(["surgery", "sum", SIMPLEX, "--match", "1:2"]) == 2
    assert main(["bounds"]) == 2
    assert main(["enumerate", "--f0", "9", "--f1", "26:36",
                 "--rules", "L99"]) == 2
    capsys.readouterr()


def test_homology(capsys):
    assert main(["homology", BUNDLE, "--prime", "2"]) == 0
    assert capsys.readouterr().out.splitlines() == [
        "homology: Z, Z, Z_2, 0",
        "name: S^2~S^1",
        "orientable: False",
        "betti mod 2: (1,1,1,1)",
    ]


def test_flip(capsys):
    assert main(["flip", STACKED, "--face", "2,3,4"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# 1-move A=(2,3,4) B=(1,6)")
    assert parse_complex(out).f_vector() == (6, 15, 18, 9)
    assert main(["flip", STACKED, "--kind", "3", "--seed", "1"]) == 0
    assert parse_complex(capsys.readouterr().out).f_vector() == \
        (5, 10, 10, 5)


def test_surgery(capsys):
    assert main(["surgery", "missing", STACKED]) == 0
    assert capsys.readouterr().out == "2 3 4 5\n"
    assert main(["surgery", "split", BUNDLE, "--facet", "1,2,3,4"]) == 0
    assert capsys.readouterr().out == "# handle\n"
    assert main(["surgery", "sum", SIMPLEX, SIMPLEX,
                 "--match", "1:1,2:2,3:3,4:4"]) == 0
    out = capsys.readouterr().out
    assert parse_complex(out).f_vector() == (6, 14, 16, 8)
    assert main(["surgery", "subdivide", SIMPLEX]) == 2


def test_bounds(capsys):
    assert main(["bounds", "--beta1", "0:2", "--heawood=-2:2"]) == 0
    out = capsys.readouterr().out
    assert "g2 >=" in out
    assert "chi" in out


def test_gamma(capsys, tmp_path):
    ledger = tmp_path / "gamma.journal"
    assert main(["gamma", BUNDLE, "--ledger", str(ledger),
                 "--name", "S^2~S^1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "gamma >= 10" in out
    assert "gamma <= 10" in out
    assert "gamma* <= 10" in out
    lines = ledger.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 1
    assert lines[0].startswith(
        "key=Z, Z, Z_2, 0;name=S^2~S^1;glo=10;gup=10;gsup=10;witness=")
    assert main(["gamma", STACKED, "--find-path"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "flip path: 1 moves" in out
    assert "gamma* <= 1" in out


def test_canon(capsys):
    assert main(["canon", STACKED]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# digest ")
    assert parse_complex(out).f_vector() == (6, 14, 16, 8)


def test_enumerate_summary(capsys):
    assert main(["enumerate", "--f0", "6", "--f1", "14:15", "--rules", "",
                 "--summary"]) == 0
    out = capsys.readouterr().out
    assert "# 2 records, 1 without missing facets" in out


def test_anneal(capsys, tmp_path):
    output = tmp_path / "best.tri"
    assert main(["anneal", STACKED, "--rounds", "1", "--mix-moves", "20",
                 "--cool-moves", "20000", "--output", str(output)]) == 0
    out = capsys.readouterr().out
    assert "after mix" in out
    assert parse_complex(output.read_text(encoding="utf-8")).f_vector() == \
        (5, 10, 10, 5)

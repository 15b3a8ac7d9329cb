import re
from typing import List, Sequence, Tuple

from .complex import Complex, build_complex
from .errors import ManifoldStatsError, ParseError

HEADER_REGEX = re.compile(r"^d=(\d+)\s+n=(\d+)$")


# facet file functions
def parse_facet_text(text: str) -> Tuple[int, int, List[Tuple[int, ...]]]:
    """
    Parses facet file content. First non-empty line is the header
    ``d=<d> n=<f0>``, every further non-empty line holds ``d+1`` vertex
    labels. ``#`` starts a comment.

    :param text: File content.
    :raises ParseError: When the header or some facet line is malformed.
    :return: Tuple of dimension, vertex count and facets in file order.
    """
    header = None
    facets: List[Tuple[int, ...]] = []
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            match = HEADER_REGEX.match(line)
            if match is None:
                raise ParseError(line_number,
                                 f"expected header 'd=3 n=<f0>', got '{line}'")
            header = (int(match.group(1)), int(match.group(2)))
            continue
        tokens = line.split()
        if len(tokens) != header[0] + 1:
            raise ParseError(line_number,
                             f"expected {header[0] + 1} labels, got "
                             f"{len(tokens)}")
        try:
            labels = tuple(int(token) for token in tokens)
        except ValueError:
            raise ParseError(line_number, "labels have to be integers") \
                from None
        if min(labels) < 1:
            raise ParseError(line_number, "labels have to be positive")
        facets.append(labels)
    if header is None:
        raise ParseError(1, "missing header 'd=3 n=<f0>'")
    return header[0], header[1], facets


def parse_complex(text: str) -> Complex:
    """
    Parses facet file content into a validated-shape complex.

    :param text: File content.
    :raises ParseError: When the text is malformed, isn't 3-dimensional or
        its header disagrees with the facets.
    :return: Complex.
    """
    d, n, facets = parse_facet_text(text)
    if d != 3:
        raise ParseError(1, f"only d=3 is supported, got d={d}")
    try:
        K = build_complex(facets)
    except ManifoldStatsError as e:
        raise ParseError(1, str(e)) from e
    if K.vertex_count != n:
        raise ParseError(1, f"header says n={n} but facets use "
                            f"{K.vertex_count} vertices")
    return K


def read_complex(path: str) -> Complex:
    """Reads a facet file."""
    with open(path, "r", encoding="utf-8") as file:
        return parse_complex(file.read())


def format_facets(facets: Sequence[Sequence[int]], vertex_count: int,
                  comments: Sequence[str] = ()) -> str:
    """
    Formats facets in the facet file format, one facet per line in the given
    order.

    :param facets: Facets to write.
    :param vertex_count: Value of the ``n`` header field.
    :param comments: Lines written as ``# ...`` before the header.
    :return: File content ending with a newline.
    """
    d = len(facets[0]) - 1 if facets else 3
    lines = [f"# {comment}" for comment in comments]
    lines.append(f"d={d} n={vertex_count}")
    lines.extend(" ".join(str(v) for v in facet) for facet in facets)
    return "\n".join(lines) + "\n"


def format_complex(K: Complex, comments: Sequence[str] = ()) -> str:
    """Formats a complex in the facet file format."""
    return format_facets(K.facets, K.vertex_count, comments)


def write_complex(K: Complex, path: str,
                  comments: Sequence[str] = ()) -> None:
    """Writes a complex to a facet file."""
    with open(path, "w", encoding="utf-8") as file:
        file.write(format_complex(K, comments))


# argument parsing functions
def parse_face(text: str) -> Tuple[int, ...]:
    """
    Parses comma separated labels e.g. ``1,2,3``.

    :raises ValueError: When some label isn't an integer.
    """
    return tuple(sorted(int(part) for part in text.split(",") if part.strip()))


def parse_range(text: str) -> Tuple[int, int]:
    """
    Parses an inclusive range ``LO:HI`` (a single number is a one value
    range).

    :raises ValueError: When the range is malformed or empty.
    """
    parts = text.split(":")
    if len(parts) == 1:
        value = int(parts[0])
        return value, value
    if len(parts) != 2:
        raise ValueError(f"Invalid range '{text}'")
    low, high = int(parts[0]), int(parts[1])
    if low > high:
        raise ValueError(f"Empty range '{text}'")
    return low, high


def parse_pairs(text: str) -> List[Tuple[int, int]]:
    """
    Parses a matching ``a1:b1,a2:b2,...``.

    :raises ValueError: When some pair is malformed.
    """
    pairs = []
    for part in text.split(","):
        if not part.strip():
            continue
        left, sep, right = part.partition(":")
        if not sep:
            raise ValueError(f"Invalid pair '{part}'")
        pairs.append((int(left), int(right)))
    return pairs

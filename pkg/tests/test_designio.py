import numpy as np
import pytest

from sphdes.catalog import platonic
from sphdes.cubature import strength
from sphdes.designio import parse, read_design_file, read_values, write
from sphdes.errors import DesignFormatError
from sphdes.sphere import random_design


def test_parse_poles():
    d = parse("0 0 1\n0 0 -1\n")
    np.testing.assert_array_equal(d.xyz, [[0, 0, 1], [0, 0, -1]])


def test_flat_tetrahedron_verifies():
    text = "# tetrahedron, flat layout\n" + "\n".join(
        f"{v:.16f}" for v in platonic("tetrahedron").xyz.ravel()
    ) + "\n"
    df = read_design_file(text)
    assert df.format == "flat" and df.comments == ("# tetrahedron, flat layout",)
    assert df.design.n == 4
    assert strength(df.design, 6).strength == 2


def test_off_sphere_rejected():
    with pytest.raises(DesignFormatError, match="point 1"):
        parse("0 0 1.02")


def test_small_norm_error_is_normalized():
    d = parse("0 0 1.0000005\n1 0 0\n")
    assert d.xyz[0, 2] == 1.0


def test_mixed_field_counts():
    with pytest.raises(DesignFormatError, match="line 2"):
        parse("0 0 1\n1\n0\n0\n")


def test_flat_not_multiple_of_three():
    with pytest.raises(DesignFormatError, match="multiple of 3"):
        parse("1\n0\n0\n0\n")


def test_non_numeric_reports_line_and_column():
    with pytest.raises(DesignFormatError, match=r"line 3, column 5"):
        parse("# c\n0 0 1\n0 0 abc\n")


def test_bad_field_count():
    with pytest.raises(DesignFormatError):
        parse("0 1\n1 0\n")
    with pytest.raises(DesignFormatError):
        parse("# only comments\n\n")


def test_crlf_comments_whitespace():
    a = parse("0 0 1\n1 0 0\n")
    b = parse("# header\r\n0 0 1   \r\n\r\n  1 0 0\t\r\n# tail\r\n")
    assert a == b


def test_scientific_notation():
    d = parse("0.0e0 0 1E0\n")
    np.testing.assert_array_equal(d.xyz, [[0, 0, 1]])


def test_format_override():
    assert parse("1 0\n0 0 0 1\n", fmt="flat").n == 2
    with pytest.raises(DesignFormatError):
        parse("1\n0\n0\n", fmt="triples")
    with pytest.raises(DesignFormatError):
        parse("1 0 0", fmt="csv")


@pytest.mark.parametrize("seed", range(100))
def test_round_trip_bitwise(seed):
    d = random_design(1 + seed % 37, seed)
    for fmt in ("triples", "flat"):
        e = parse(write(d, 17, fmt))
        assert np.array_equal(d.xyz, e.xyz)


def test_low_precision():
    e = parse(write(platonic("icosahedron"), precision=6))
    assert np.max(np.abs(e.xyz - platonic("icosahedron").xyz)) <= 1e-6


def test_flat_line_count():
    text = write(parse("0 0 1\n0 0 -1\n"), fmt="flat")
    assert len(text.splitlines()) == 6


def test_write_is_deterministic_and_validates():
    d = random_design(5, 1)
    assert write(d) == write(d)
    with pytest.raises(ValueError):
        write(d, precision=18)
    assert write(d, comments=["hello"]).startswith("# hello\n")


def test_read_values():
    np.testing.assert_array_equal(read_values("# y\n1.5\n2 3\n"), [1.5, 2.0, 3.0])

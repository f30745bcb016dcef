"""Tests for the structure file parsers."""

import pytest

from semicat.core.bigraph import BipartiteGraph, LabelledBipartiteGraph
from semicat.core.exceptions import ParseError, ValidationError
from semicat.core.finsemi import FiniteSemigroup, RectangularBand
from semicat.core.groups import FiniteGroup
from semicat.core.rees import ReesMatrixSemigroup, induced_graph
from semicat.core.semilat import Semilattice, StrongSemilattice
from semicat.parsers import parse_fix_set, parse_structure, parse_text
from semicat.parsers.constants import SAMPLE_SUFFIXES, STRUCTURE_KEYWORDS
from semicat.parsers.formats import StructureParser

KINDS = {
    "group": FiniteGroup,
    "semigroup": FiniteSemigroup,
    "rband": RectangularBand,
    "semilattice": Semilattice,
    "bigraph": (BipartiteGraph, LabelledBipartiteGraph),
    "rees": ReesMatrixSemigroup,
    "sss": StrongSemilattice,
}


def test_every_keyword_has_a_parser():
    assert set(StructureParser.registry) == set(STRUCTURE_KEYWORDS)


def test_every_sample_parses(samples_dir):
    samples = sorted(samples_dir.iterdir())
    assert samples
    for path in samples:
        kind = SAMPLE_SUFFIXES[path.suffix]
        if kind == "fix set":
            assert parse_fix_set(path)
        else:
            assert isinstance(parse_structure(path), KINDS[kind]), path.name


def test_rees_samples(samples_dir):
    brandt = parse_structure(samples_dir / "brandt_z2_2.rees")
    assert brandt.group.order == 2
    assert brandt.matrix.entries == ((0, None), (None, 0))
    connected = parse_structure(samples_dir / "connected_z5.rees")
    assert connected.matrix.entries == ((1, 2, None), (None, 3, 4))
    assert connected.order == 31


def test_labelled_graph_sample(samples_dir, connected_z5):
    graph = parse_structure(samples_dir / "connected_z5.bg")
    assert graph.alphabet == ("a", "b", "c", "d")
    assert graph.graph == induced_graph(connected_z5)
    assert graph.label(1, 1) == "c"


def test_strong_semilattice_samples(samples_dir):
    clifford = parse_structure(samples_dir / "clifford.sss")
    assert clifford.order == 4
    assert dict(clifford.connectors) == {(1, 0): (0, 1)}
    normal_band = parse_structure(samples_dir / "normal_band.sss")
    assert normal_band.constants == (0, 0, 0)
    assert [c.order for c in normal_band.components] == [1, 2, 2]


def test_small_samples(samples_dir):
    assert parse_structure(samples_dir / "lz2.sg").table == ((0, 0), (1, 1))
    assert parse_structure(samples_dir / "rb23.rb") == RectangularBand(2, 3)
    assert parse_structure(samples_dir / "klein.group").order == 4
    assert parse_fix_set(samples_dir / "l0.set") == frozenset({0})


def test_comments_and_blank_lines():
    text = "# header\n\nrband 1 2   # inline comment\n\n"
    assert parse_text(text) == RectangularBand(1, 2)


@pytest.mark.parametrize(
    ("text", "line", "fragment"),
    [
        ("group 2\n0 1\n1 x\n", 3, "expected integers"),
        ("frob 3\n", 1, "unexpected block 'frob'"),
        ("group 2\n0 1\n", 2, "reached end"),
        ("rband 1 1\nrband 1 1\n", 2, "after the structure"),
        ("semigroup 2\n0 0 0\n1 1\n", 2, "expected 2 integers"),
        ("rees\ngroup 1\n0\nmatrix 1 2\n0\n", 5, "expected 2 entries"),
        ("rees\ngroup 1\n0\nmatrice 1 1\n0\n", 4, "expected 'matrix"),
        ("rees\nsemigroup 1\n0\n", 2, "expected one of: group"),
        ("bigraph 2 2\n0 0 a\n1 1\n", 3, "either every edge"),
        ("sss\nsemilattice 1\n0\ncomponent 0\nrband 1 1\ncomponent 0\n", 6, "given twice"),
        ("sss\nsemilattice 2\n0 0\n0 1\ncomponent 0\nrband 1 1\n", 1, "need components"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError, match=fragment) as excinfo:
        parse_text(text)
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}:")


def test_empty_input():
    with pytest.raises(ParseError, match="holds no structure"):
        parse_text("# only a comment\n")


@pytest.mark.parametrize(
    ("text", "fragment"),
    [
        ("rees\ngroup 1\n0\nmatrix 2 1\n0\n.\n", "Row 1 of the sandwich matrix"),
        ("rees\ngroup 2\n0 1\n1 0\nmatrix 1 1\n2\n", "not an element"),
        ("group 2\n1 0\n0 1\n", "element 0 must be the identity"),
        ("semigroup 2\n0 0\n1 0\n", "not associative"),
        ("semilattice 2\n0 0\n1 1\n", "not commutative"),
        ("rband 0 2\n", "nonempty"),
        ("bigraph 1 1\n0 3\n", "outside"),
        ("sss\nsemilattice 2\n0 0\n0 1\ncomponent 0\nrband 1 1\ncomponent 1\nrband 1 2\n", "Missing connector"),
    ],
)
def test_invalid_structures_raise_validation_errors(text, fragment):
    with pytest.raises(ValidationError, match=fragment):
        parse_text(text)


def test_validation_error_names_the_header_line():
    with pytest.raises(ValidationError) as excinfo:
        parse_text("\n\nsemigroup 2\n0 0\n1 0\n")
    assert excinfo.value.message.startswith("line 3: invalid semigroup")
    assert "Caused by: NotAssociativeError" in str(excinfo.value)


def test_constants_and_connectors_exclude_each_other():
    text = "sss\nsemilattice 2\n0 0\n0 1\ncomponent 0\nrband 1 1\ncomponent 1\nrband 1 1\nconnector 1 0\n0\nconstants 0 0\n"
    with pytest.raises(ParseError, match="not both"):
        parse_text(text)


def test_includes_resolve_relative_to_the_including_file(tmp_path):
    groups = tmp_path / "groups"
    groups.mkdir()
    (groups / "z3.group").write_text("group 3\n0 1 2\n1 2 0\n2 0 1\n")
    (tmp_path / "full.rees").write_text("rees\ninclude groups/z3.group\nmatrix 1 1\n2\n")
    semigroup = parse_structure(tmp_path / "full.rees")
    assert semigroup.group.order == 3
    assert semigroup.matrix.entries == ((2,),)


def test_include_errors(tmp_path):
    (tmp_path / "broken.rees").write_text("rees\ninclude missing.group\nmatrix 1 1\n0\n")
    with pytest.raises(ParseError, match="cannot read included file") as excinfo:
        parse_structure(tmp_path / "broken.rees")
    assert excinfo.value.line == 2
    (tmp_path / "two.group").write_text("group 1\n0\ngroup 1\n0\n")
    (tmp_path / "uses_two.rees").write_text("rees\ninclude two.group\nmatrix 1 1\n0\n")
    with pytest.raises(ParseError, match="unexpected content"):
        parse_structure(tmp_path / "uses_two.rees")


def test_unreadable_files(tmp_path):
    with pytest.raises(ParseError, match="Cannot read"):
        parse_structure(tmp_path / "absent.rees")
    with pytest.raises(ParseError, match="Cannot read"):
        parse_fix_set(tmp_path / "absent.set")


def test_fix_set_rejects_non_integers(tmp_path):
    path = tmp_path / "bad.set"
    path.write_text("1 2\n# fine\nthree\n")
    with pytest.raises(ParseError) as excinfo:
        parse_fix_set(path)
    assert excinfo.value.line == 3

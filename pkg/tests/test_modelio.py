import json
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from conftest import SYMS, polys, to_sympy
from dopaudit.cometric import Cometric
from dopaudit.errors import ModelSyntaxError, UnknownFixture
from dopaudit.modelio import (
    FIXTURES, ModelFile, fixture_cometric, fixture_model, fixture_names, load_model, parse_model, render_model,
)
from dopaudit.modelio.report import SCHEMA, ReportConfig, build_report, render_report
from dopaudit.polyring import Poly

x, y = Poly.gens(2)

DISK = """\
# round sphere projected to the disk
dim 2
vars x y
g 1 1 = 1 - x^2
g 1 2 = -x*y
g 2 2 = 1 - y^2
"""


def test_parse_disk():
    m = parse_model(DISK)
    assert m.cometric() == fixture_cometric("disk")


def test_rational_literals_and_parentheses():
    m = parse_model("dim 1\nvars t\ng 1 1 = (1 - t)*(1 + t)/2 + 3/4*t^2\n")
    t = Poly.gens(1)[0]
    assert m.entries[0, 0] == (1 - t ** 2) / 2 + t ** 2 * Fraction(3, 4)


@pytest.mark.parametrize("text, code, line", [
    ("dim 2\nvars x y\ng 1 1 = 1\ng 1 2 = 0\n", "MISSING_ENTRY", None),
    ("dim 2\nvars x y\ng 1 1 = 1\ng 1 1 = 2\ng 1 2 = 0\ng 2 2 = 1\n", "DUPLICATE_ENTRY", 4),
    ("dim 2\nvars x y\ng 1 1 = z\ng 1 2 = 0\ng 2 2 = 1\n", "UNKNOWN_VARIABLE", 3),
    ("dim 2\nvars x y\ng 1 1 = 1 +\ng 1 2 = 0\ng 2 2 = 1\n", "SYNTAX", 3),
    ("dim 2\nvars x y\ng 1 1 = x/y\ng 1 2 = 0\ng 2 2 = 1\n", "SYNTAX", 3),
    ("", "SYNTAX", 1),
])
def test_parse_errors(text, code, line):
    with pytest.raises(ModelSyntaxError) as exc:
        parse_model(text)
    assert exc.value.code == code
    if line is not None:
        assert exc.value.line == line


def test_error_message_carries_column():
    with pytest.raises(ModelSyntaxError) as exc:
        parse_model("dim 1\nvars t\ng 1 1 = t ^ t\n")
    assert exc.value.column == 13
    assert "line 3, column 13" in str(exc.value)


def test_cubic_entry_accepted_by_parser():
    m = parse_model("dim 1\nvars t\ng 1 1 = t^3\n")
    assert m.entries[0, 0].degree == 3


@st.composite
def model_files(draw):
    d = draw(st.integers(1, 3))
    entries = {(i, j): draw(polys(nvars=d, max_deg=2, max_terms=4)) for i in range(d) for j in range(i, d)}
    key = draw(st.sampled_from(["verdict", "lambdas"]))
    return ModelFile(d, tuple("xyz"[:d]), entries, draw(st.sampled_from([None, "m1"])), {key: "PASS"})


@given(model_files())
def test_parse_render_round_trip(m):
    back = parse_model(render_model(m))
    assert back == m
    assert render_model(back) == render_model(m)


@pytest.mark.parametrize("name", fixture_names())
def test_fixture_round_trip(name):
    m = fixture_model(name)
    assert parse_model(render_model(m)).cometric() == fixture_cometric(name)


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        fixture_model("nope")
    with pytest.raises(FileNotFoundError):
        load_model("nope")


def test_load_model_sources(tmp_path):
    p = tmp_path / "disk.dop"
    p.write_text(DISK)
    assert load_model(str(p)).cometric() == fixture_cometric("disk")
    assert load_model("fixture:square").name == "square"


def test_fixture_expected_values():
    assert fixture_cometric("disk") == Cometric([[1 - x ** 2, -x * y], [-x * y, 1 - y ** 2]])
    assert fixture_cometric("square") == Cometric([[1 - x ** 2, Poly.zero(2)], [Poly.zero(2), 1 - y ** 2]])
    assert fixture_cometric("disk").boundary == 1 - x ** 2 - y ** 2


def _trig_inner_product(c, f, h, ts):
    gf = [sp.diff(f, t) for t in ts]
    gh = [sp.diff(h, t) for t in ts]
    return sum(c[i][j] * gf[i] * gh[j] for i in range(2) for j in range(2))


def test_deltoid_entries_match_trigonometric_pushforward():
    t1, t2 = sp.symbols("t1 t2", real=True)
    Z = sp.expand_complex(sp.exp(sp.I * t1) + sp.exp(sp.I * t2) + sp.exp(-sp.I * (t1 + t2)))
    X, Y = sp.re(Z), sp.im(Z)
    c = [[sp.Rational(2, 3), sp.Rational(-1, 3)], [sp.Rational(-1, 3), sp.Rational(2, 3)]]
    g = fixture_cometric("deltoid")
    for (a, b), (f, h) in {(0, 0): (X, X), (0, 1): (X, Y), (1, 1): (Y, Y)}.items():
        entry = to_sympy(g[a, b]).subs({SYMS[0]: X, SYMS[1]: Y}, simultaneous=True)
        assert sp.simplify(sp.expand_trig(_trig_inner_product(c, f, h, (t1, t2)) - entry)) == 0
    D = g.boundary
    assert D.degree == 4


def test_b2_entries_match_pushforward():
    X, Y = sp.symbols("X Y")
    u, v = X ** 2 + Y ** 2, X ** 2 * Y ** 2
    g = fixture_cometric("b2")
    inv = {SYMS[0]: u, SYMS[1]: v}
    for (a, b), (f, h) in {(0, 0): (u, u), (0, 1): (u, v), (1, 1): (v, v)}.items():
        ref = sp.diff(f, X) * sp.diff(h, X) + sp.diff(f, Y) * sp.diff(h, Y)
        assert sp.expand(to_sympy(g[a, b]).subs(inv, simultaneous=True) - ref) == 0


# --- reports --------------------------------------------------------------

FAST = ReportConfig(oracle=False)


def test_report_square_machine():
    rep = build_report(fixture_cometric("square"), "square", FAST)
    data = json.loads(render_report(rep, "machine"))
    assert data["schema"] == SCHEMA
    assert data["verdict"]["status"] == "PASS"
    assert data["verdict"]["lambdas"] == ["0", "0"]


def test_report_disk_fields():
    rep = build_report(fixture_cometric("disk"), "disk", FAST)
    assert rep.data["admissibility"]["boundary_degree_maximal"] is False
    assert rep.data["verdict"]["status"] == "NOT_APPLICABLE"


@pytest.mark.parametrize("name", ["square", "b2"])
def test_report_deterministic(name):
    cfg = ReportConfig(samples=3, levels=4)
    a = render_report(build_report(fixture_cometric(name), name, cfg), "machine")
    b = render_report(build_report(fixture_cometric(name), name, cfg), "machine")
    assert a == b
    assert render_report(build_report(fixture_cometric(name), name, cfg), "human") == \
        render_report(build_report(fixture_cometric(name), name, cfg), "human")


def test_render_rejects_unknown_format():
    with pytest.raises(ValueError):
        render_report(build_report(fixture_cometric("disk"), "disk", FAST), "xml")


def test_fixture_table_descriptions():
    assert set(FIXTURES) == set(fixture_names())
    assert all(e.description for e in FIXTURES.values())

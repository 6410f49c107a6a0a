import math
import re
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from thetalift.arith import DiscriminantPair
from thetalift.cli import main
from thetalift.lifts import LiftConfig, phi, shintani_coeff, xi_phi_coefficient
from thetalift.weilrep import FormInput, delta_qexp, parse_vvmf

FORM_A = "VVMF N=1 K=2 DELTA=1 R=1\nCP 1 -1 4 1.0 0.0\n"
FORM_WITH_SHADOW = ("VVMF N=1 K=2 DELTA=1 R=1\n"
                    "CP 0 0 1 1.0 0.0\nCM 1 -1 4 1.0 0.0\n")
FORM_K1 = "VVMF N=2 K=1 DELTA=1 R=1\nCP 1 -1 8 1.0 0.0\nCP 3 -1 8 -1.0 0.0\n"
FORM_MINUS_ONLY = "VVMF N=1 K=2 DELTA=1 R=1\nCM 1 -1 4 2.0 0.0\n"


def mirror_values(out: str, key: str) -> list[str]:
    return re.findall(rf"(?:^|\s){key}=(\S+)", out, flags=re.M)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def delta_cusp_text() -> str:
    lines = ["CUSP N=1 WEIGHT=12"]
    for n, c in sorted(delta_qexp(40).items()):
        lines.append(f"A {n} {float(c)!r} 0.0")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# orbits


def test_orbits_single_class(capsys):
    assert main(["orbits", "-N", "1", "-D", "5", "-h", "1"]) == 0
    out = capsys.readouterr().out
    assert mirror_values(out, "COUNT") == ["1"]
    assert len(mirror_values(out, "REP")) == 1
    assert mirror_values(out, "CHI") == ["1"]


def test_orbits_deterministic(capsys):
    main(["orbits", "-N", "2", "-D", "8", "-h", "0"])
    first = capsys.readouterr().out
    main(["orbits", "-N", "2", "-D", "8", "-h", "0"])
    assert capsys.readouterr().out == first


def test_orbits_flag_errors(capsys):
    assert main(["orbits", "-N", "1", "-D", "5", "-h", "0"]) == 2
    assert main(["orbits", "-N", "1", "-D", "-4", "-h", "0"]) == 2
    assert main(["orbits", "-N", "1", "-D", "5"]) == 2


# ---------------------------------------------------------------------------
# phi


def test_phi_matches_library_with_diagnostics(tmp_path, capsys):
    path = write(tmp_path, "a.vvmf", FORM_A)
    assert main(["phi", "-f", path, "-z", "0.5,0.35"]) == 0
    out = capsys.readouterr().out
    form = parse_vvmf(FORM_A)
    cfg = LiftConfig(level=1, k=2, pair=form.pair, tol=1e-10)
    want = phi(0.5 + 0.35j, form, cfg)
    got = complex(float(mirror_values(out, "PHI_RE")[0]),
                  float(mirror_values(out, "PHI_IM")[0]))
    assert got == pytest.approx(want, rel=1e-12)
    top = float(mirror_values(out, "TOP_RE")[0])
    corr = float(mirror_values(out, "CORR_RE")[0])
    assert abs(corr) > 0.1
    assert top + corr == pytest.approx(got.real, rel=1e-12)


def test_phi_prints_zero_without_nonnegative_part(tmp_path, capsys):
    path = write(tmp_path, "m.vvmf", FORM_MINUS_ONLY)
    assert main(["phi", "-f", path, "-z", "0.2,0.7"]) == 0
    out = capsys.readouterr().out
    assert "phi = 0" in out
    assert mirror_values(out, "PHI_RE") == ["0"]


def test_phi_error_codes(tmp_path, capsys):
    path = write(tmp_path, "a.vvmf", FORM_A)
    assert main(["phi", "-f", path, "-z", "nonsense"]) == 2
    assert main(["phi", "-f", path, "-z", "0.1,-1.0"]) == 2
    assert main(["phi", "-f", str(tmp_path / "missing.vvmf"), "-z", "0.1,1.0"]) == 3
    bad = write(tmp_path, "bad.vvmf", "HELLO WORLD\n")
    assert main(["phi", "-f", bad, "-z", "0.1,1.0"]) == 3
    truncated = write(tmp_path, "bad2.vvmf", "VVMF N=1 K=2 DELTA=1 R=1\nCP 1 -1\n")
    assert main(["phi", "-f", truncated, "-z", "0.1,1.0"]) == 3


# ---------------------------------------------------------------------------
# shimura


def test_shimura_table(tmp_path, capsys):
    path = write(tmp_path, "c.vvmf", FORM_WITH_SHADOW)
    assert main(["shimura", "-f", path, "-m", "3"]) == 0
    out = capsys.readouterr().out
    form = parse_vvmf(FORM_WITH_SHADOW)
    cfg = LiftConfig(level=1, k=2, pair=form.pair, tol=1e-10)
    got = [float(v) for v in mirror_values(out, "B_RE")]
    for m, val in enumerate(got, start=1):
        assert val == pytest.approx(xi_phi_coefficient(m, form, cfg).real,
                                    rel=1e-12)
    assert len(got) == 3


def test_shimura_constant_for_weight_one(tmp_path, capsys):
    path = write(tmp_path, "b.vvmf", FORM_K1)
    assert main(["shimura", "-f", path, "-m", "2"]) == 0
    out = capsys.readouterr().out
    assert float(mirror_values(out, "CONST_RE")[0]) == 0
    assert float(mirror_values(out, "CONST_IM")[0]) == pytest.approx(
        -math.sqrt(2), rel=1e-12)


def test_shimura_bad_range(tmp_path, capsys):
    path = write(tmp_path, "c.vvmf", FORM_WITH_SHADOW)
    assert main(["shimura", "-f", path, "-m", "0"]) == 2


# ---------------------------------------------------------------------------
# shintani


def test_shintani_value_and_estimate(tmp_path, capsys):
    path = write(tmp_path, "delta.cusp", delta_cusp_text())
    assert main(["shintani", "-g", path, "-m", "-5/4", "-h", "1"]) == 0
    out = capsys.readouterr().out
    got = complex(float(mirror_values(out, "SHINTANI_RE")[0]),
                  float(mirror_values(out, "SHINTANI_IM")[0]))
    from thetalift.weilrep import CuspFormInput
    cusp = CuspFormInput(level=1, weight=12, coefficients=delta_qexp(40))
    cfg = LiftConfig(level=1, k=6, pair=DiscriminantPair(1, 1, 1))
    want = shintani_coeff(cusp, Fraction(-5, 4), 1, cfg)
    assert got == pytest.approx(want, rel=1e-9)
    assert float(mirror_values(out, "ERR")[0]) < 1e-6


def test_shintani_rejects_nonnegative_index(tmp_path, capsys):
    path = write(tmp_path, "delta.cusp", delta_cusp_text())
    assert main(["shintani", "-g", path, "-m", "5/4", "-h", "1"]) == 2


def test_shintani_rejects_odd_weight(tmp_path, capsys):
    text = "CUSP N=1 WEIGHT=11\nA 1 1.0 0.0\n"
    path = write(tmp_path, "odd.cusp", text)
    assert main(["shintani", "-g", path, "-m", "-5/4", "-h", "1"]) == 2


# ---------------------------------------------------------------------------
# verify


def test_verify_single_suite(capsys):
    assert main(["verify", "--suite", "gamma62"]) == 0
    out = capsys.readouterr().out
    assert re.search(r"^SUITE=gamma62 RESIDUAL=\d\.\d{6}e[+-]\d{2,3} "
                     r"TOL=\d\.\de[+-]\d{2,3} PASS=1$", out, flags=re.M)
    assert "pass" in out


def test_verify_reports_failure(capsys):
    assert main(["verify", "--suite", "gamma62", "--tolerance", "1e-30"]) == 1
    out = capsys.readouterr().out
    assert "PASS=0" in out
    assert "FAIL" in out


def test_verify_unknown_suite(capsys):
    assert main(["verify", "--suite", "bogus"]) == 2


def test_verify_all_passes(capsys):
    assert main(["verify", "--suite", "all"]) == 0
    out = capsys.readouterr().out
    names = re.findall(r"^SUITE=(\w+) ", out, flags=re.M)
    assert len(names) == 11
    assert names == sorted(names)
    assert "PASS=0" not in out


# ---------------------------------------------------------------------------
# plot


def test_plot_writes_valid_svg(tmp_path, capsys):
    form = write(tmp_path, "a.vvmf", FORM_A)
    out_path = str(tmp_path / "walls.svg")
    assert main(["plot", "-f", form, "-o", out_path]) == 0
    out = capsys.readouterr().out
    tree = ET.parse(out_path)
    root = tree.getroot()
    ns = "{http://www.w3.org/2000/svg}"
    assert root.tag == f"{ns}svg"
    assert root.get("version") == "1.1"
    paths = root.findall(f".//{ns}g/{ns}path")
    assert len(paths) == int(mirror_values(out, "WALLS")[0])
    assert len(paths) > 0
    shapes = [p.get("d") for p in paths]
    assert any(" A " in d for d in shapes)   # arcs
    assert any(" L " in d for d in shapes)   # vertical lines
    assert root.find(f".//{ns}marker") is not None
    assert root.find(f".//{ns}clipPath") is not None


def test_plot_is_deterministic(tmp_path, capsys):
    form = write(tmp_path, "a.vvmf", FORM_A)
    p1, p2 = str(tmp_path / "one.svg"), str(tmp_path / "two.svg")
    assert main(["plot", "-f", form, "-o", p1]) == 0
    assert main(["plot", "-f", form, "-o", p2]) == 0
    capsys.readouterr()
    assert (tmp_path / "one.svg").read_bytes() == (tmp_path / "two.svg").read_bytes()


# ---------------------------------------------------------------------------
# dispatch


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert main(["orbits", "--help"]) == 0
    capsys.readouterr()


def test_missing_command_is_flag_error(capsys):
    assert main([]) == 2

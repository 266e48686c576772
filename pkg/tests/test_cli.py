import cmath
import dataclasses
import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from aesworkbench import zoo
from aesworkbench.cli import verification
from aesworkbench.cli.__main__ import build_parser
from aesworkbench.cli.__main__ import family_params
from aesworkbench.cli.__main__ import main
from aesworkbench.cli.commands import FAMILIES
from aesworkbench.cli.commands import build_state
from aesworkbench.cli.commands import closed_form_overlap
from aesworkbench.cli.commands import format_complex
from aesworkbench.cli.commands import get_family
from aesworkbench.cli.commands import jsonable
from aesworkbench.cli.commands import ode_points
from aesworkbench.cli.commands import parse_complex
from aesworkbench.cli.commands import parse_params
from aesworkbench.cli.commands import state_record
from aesworkbench.cli.io import read_coefficients
from aesworkbench.cli.io import read_record
from aesworkbench.cli.plotting import squeeze_ellipse
from aesworkbench.config import RunConfig
from aesworkbench.errors import InvalidSpec
from aesworkbench.moments import quadrature_report
from aesworkbench.moments import su11_report
from aesworkbench.solver import fidelity


@pytest.mark.parametrize(
    ("text", "value"),
    [
        ("1+0i", 1 + 0j),
        ("0.7+0.2i", 0.7 + 0.2j),
        ("-1-2i", -1 - 2j),
        ("2i", 2j),
        ("i", 1j),
        ("-i", -1j),
        ("1+i", 1 + 1j),
        ("1.5", 1.5 + 0j),
        ("1e-3-2e-1i", 1e-3 - 0.2j),
    ],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["1+2j", "abc", "1 + 2i", "", "nan", "1e999"])
def test_parse_complex_rejects(text):
    with pytest.raises(InvalidSpec):
        parse_complex(text)


@pytest.mark.parametrize("value", [0.1 - 0.3j, -2.5 + 0j, 1e-20 + 3e5j])
def test_format_complex_is_read_back(value):
    assert parse_complex(format_complex(value)) == value


def test_family_options_are_parsed_per_family():
    args = build_parser().parse_args(
        ["state", "cat-sdz", "--upsilon=-1-2i", "--tau", "0.5", "--dim", "64"]
    )
    assert args.family == "cat-sdz"
    assert args.dim == 64
    assert family_params(args) == {"upsilon": "-1-2i", "tau": "0.5"}


def test_plot_takes_kind_before_family():
    args = build_parser().parse_args(
        ["plot", "husimi-q", "raw-aes", "--beta", "0,1,0,0,0", "--lambda", "1"]
    )
    assert args.kind == "husimi-q"
    assert family_params(args) == {"beta": "0,1,0,0,0", "lambda": "1"}


@pytest.mark.parametrize(
    "args",
    [
        ["state", "glauber", "--tau", "1"],
        ["state", "glauber", "--upsilon", "1", "--colour", "red"],
        ["state", "glauber", "upsilon", "1"],
        ["state", "glauber", "--upsilon"],
    ],
)
def test_family_options_reject_unknown_tokens(args):
    with pytest.raises(SystemExit) as exc:
        main(args)
    assert exc.value.code == 2


def test_parse_params_defaults_and_types():
    values = parse_params(get_family("cat-sdz"), {"upsilon": "1-i", "s": "0.2"})
    assert values == {
        "upsilon": 1 - 1j,
        "tau": 1.0,
        "varphi": 0.0,
        "s": 0.2,
        "theta": 0.0,
        "z": 0j,
    }


def test_parse_params_mix_is_optional():
    values = parse_params(get_family("su11-is"), {"lambda": "0.3", "eta": "2"})
    assert "mix" not in values
    values = parse_params(
        get_family("su11-is"), {"lambda": "0.3", "eta": "2", "mix": "1,0.5i"}
    )
    assert values["mix"] == [1, 0.5j]


@pytest.mark.parametrize(
    ("name", "raw"),
    [
        ("glauber", {}),
        ("glauber", {"upsilon": "1", "tau": "1"}),
        ("displaced-fock", {"n": "1.5", "upsilon": "0"}),
        ("displaced-squeezed", {"s": "0.1+0.2i"}),
        ("nope", {}),
    ],
)
def test_bad_parameters(name, raw):
    with pytest.raises(InvalidSpec):
        build_state(name, raw, RunConfig(truncation=64))


def test_every_family_has_a_description():
    for family in FAMILIES.values():
        assert family.description
        assert set(family.defaults) <= set(family.params)


def test_jsonable():
    record = jsonable({"z": 1 - 2j, "v": np.array([1j]), "x": np.float64(0.5)})
    assert record == {
        "z": {"re": 1.0, "im": -2.0},
        "v": [{"re": 0.0, "im": 1.0}],
        "x": 0.5,
    }


def test_state_record_json(tmp_path):
    code = main(
        ["state", "glauber", "--upsilon", "1+0i", "--dim", "64"]
        + ["--output-dir", str(tmp_path)]
    )
    assert code == 0
    record = read_record(tmp_path / "glauber.json")
    assert record["family"] == "glauber"
    assert record["residuals"]["passed"]
    assert record["residuals"]["eigen"] <= 1e-7
    assert record["residuals"]["ode"] <= 1e-7
    assert record["residuals"]["closed_form_overlap"] == pytest.approx(1, abs=1e-10)
    probs = [row["prob"] for row in record["coefficients"]["rows"]]
    expected = [math.exp(-1 - math.lgamma(n + 1)) for n in range(len(probs))]
    assert_allclose(probs, expected, atol=1e-13)
    assert record["moments"]["photon"]["mandel_q"] == pytest.approx(0, abs=1e-10)
    assert record["spec"]["lambda"] == {"re": 1.0, "im": 0.0}


def test_record_round_trip_keeps_moments(tmp_path):
    main(
        ["state", "even-cat", "--upsilon", "1", "--dim", "64"]
        + ["--output-dir", str(tmp_path)]
    )
    record = read_record(tmp_path / "even-cat.json")
    fock = read_coefficients(tmp_path / "even-cat.json")
    assert quadrature_report(fock).as_record() == record["moments"]["quadrature"]
    assert su11_report(fock).as_record() == record["moments"]["su11"]


def test_state_record_csv(tmp_path):
    code = main(
        ["state", "glauber", "--upsilon", "0.5-0.5i", "--dim", "64"]
        + ["--output-dir", str(tmp_path), "--format", "csv"]
    )
    assert code == 0
    summary = (tmp_path / "glauber.summary.csv").read_text()
    assert "residuals.passed,True" in summary
    fock = read_coefficients(tmp_path / "glauber.coefficients.csv")
    expected = zoo.glauber(0.5 - 0.5j).fock
    assert_allclose(fock.coeffs, expected.coeffs, atol=1e-15)


def test_raw_element_reproduces_even_cat(tmp_path):
    code = main(
        ["state", "raw-aes", "--beta", "0,1,0,0,0", "--lambda", "1+0i"]
        + ["--mix", "1,1", "--dim", "64", "--output-dir", str(tmp_path)]
    )
    assert code == 0
    fock = read_coefficients(tmp_path / "raw-aes.json")
    assert fidelity(fock, zoo.even_cat(1.0).fock) >= 1 - 1e-12


@pytest.mark.parametrize(
    "args",
    [
        ["state", "glauber", "--upsilon", "abc"],
        ["state", "glauber"],
        ["state", "glauber", "--upsilon", "1", "--dim", "4"],
    ],
)
def test_usage_errors(args, tmp_path):
    assert main(args + ["--output-dir", str(tmp_path)]) == 2


def test_non_normalizable_element(tmp_path):
    args = ["state", "raw-aes", "--beta", "0,0,0,1,2", "--lambda", "0"]
    assert main(args + ["--output-dir", str(tmp_path)]) == 3
    assert not list(tmp_path.iterdir())


def test_unknown_family_exits_with_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["state", "unicorn"])
    assert exc.value.code == 2


def test_verify_commutators(tmp_path, capsys):
    assert main(["verify", "commutators", "--output-dir", str(tmp_path)]) == 0
    record = json.loads((tmp_path / "verify-commutators.json").read_text())
    assert record["passed"]
    assert "PASS commutators" in capsys.readouterr().out


def test_reductions_suite_runs_matrix_route(monkeypatch):
    monkeypatch.setattr(verification, "DRAWS", 2)
    (report,) = verification.run_suite("reductions", RunConfig(truncation=64))
    names = [check.name for check in report.checks]
    for prefix in ("dsfs = D", "cat-sdz = D", "IS displaced-squeezed = D"):
        assert sum(name.startswith(prefix) for name in names) == 2
    assert sum("Hermite form" in name for name in names) == 2
    assert report.passed, [c for c in report.checks if not c.passed]


def test_uncertainty_suite_checks_random_states(monkeypatch):
    monkeypatch.setattr(verification, "DRAWS", 1)
    monkeypatch.setattr(verification, "ROBERTSON_STATES", 50)
    (report,) = verification.run_suite("uncertainty", RunConfig(truncation=64))
    floors = [c for c in report.checks if c.name.startswith("50 random states")]
    assert len(floors) == 2
    assert all(check.value < 0 for check in floors)
    assert report.passed


def test_kummer_duality_suite_samples_wide_disk(monkeypatch):
    monkeypatch.setattr(verification, "DRAWS", 1)
    monkeypatch.setattr(verification, "KUMMER_SAMPLES", 100)
    (report,) = verification.run_suite("kummer-duality", RunConfig(truncation=64))
    assert report.checks[-1].name == "1F1 Kummer transformation, 100 samples"
    assert report.passed


def test_verify_rejects_family_parameters(tmp_path):
    with pytest.raises(SystemExit):
        main(["verify", "commutators", "--upsilon", "1"])


def test_plot_photon_distribution(tmp_path):
    code = main(
        ["plot", "pn-dist", "even-cat", "--upsilon", "1.5", "--dim", "64"]
        + ["--output-dir", str(tmp_path)]
    )
    assert code == 0
    assert (tmp_path / "pn-dist-even-cat.png").exists()
    data = json.loads((tmp_path / "pn-dist-even-cat.json").read_text())
    assert_allclose(data["prob"][1::2], 0, atol=1e-20)
    assert sum(data["prob"]) == pytest.approx(1)


def test_plot_husimi_integrates_to_one(tmp_path):
    code = main(
        ["plot", "husimi-q", "glauber", "--upsilon", "1", "--dim", "64"]
        + ["--output-dir", str(tmp_path)]
    )
    assert code == 0
    data = json.loads((tmp_path / "husimi-q-glauber.json").read_text())
    assert data["integral"] == pytest.approx(1, abs=1e-3)
    assert len(data["q"]) == len(data["im"])


def test_plot_squeeze_ellipse_csv(tmp_path):
    code = main(
        ["plot", "squeeze-ellipse", "displaced-squeezed", "--s", "0.5"]
        + ["--dim", "64", "--format", "csv", "--output-dir", str(tmp_path)]
    )
    assert code == 0
    lines = (tmp_path / "squeeze-ellipse-displaced-squeezed.csv").read_text()
    assert lines.splitlines()[0] == "x1,x2"
    assert (tmp_path / "squeeze-ellipse-displaced-squeezed.png").exists()


def test_squeeze_ellipse_axes():
    cov = np.diag([math.exp(1) / 4, math.exp(-1) / 4])
    contour = squeeze_ellipse(cov, points=5)
    assert contour.shape == (5, 2)
    radii = np.sort(np.linalg.norm(contour[:2], axis=1))
    assert_allclose(radii, np.sort(np.sqrt(np.diag(cov))), rtol=1e-12)


def test_closed_form_overlap_is_exact_for_coherent_state():
    bundle = zoo.glauber(1.0)
    assert closed_form_overlap(bundle) == pytest.approx(1, abs=1e-12)


def test_state_record_fails_on_closed_form_mismatch():
    bundle = dataclasses.replace(
        zoo.glauber(1.0), closed_form=lambda alpha: cmath.exp(1.3 * alpha)
    )
    residuals = state_record(bundle, RunConfig(truncation=64))["residuals"]
    assert residuals["eigen"] <= 1e-7
    assert residuals["closed_form_overlap"] < 0.99
    assert not residuals["passed"]


def test_ode_points_fill_the_disk():
    points = ode_points()
    assert len(points) == 50
    assert np.max(np.abs(points)) <= 3.0
    assert np.max(np.abs(points)) > 2.9
    assert len({round(p.real, 9) for p in points}) == 50

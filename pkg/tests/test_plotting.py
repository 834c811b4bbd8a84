import hashlib

import pytest

from fuzzalloc.capm import MarketParams
from fuzzalloc.cli import main
from fuzzalloc.control import ControlProblem, analytic_trajectory, integrate_trajectory
from fuzzalloc.fuzzy import RISK_CLASSES, make_fuzzy_subset
from fuzzalloc.plotting import plot_cml, plot_membership, plot_trajectory
from fuzzalloc.scenario import bundled_scenario
from fuzzalloc.utility import QuadraticUtilityParams

PNG = b"\x89PNG\r\n\x1a\n"


def _is_png(path):
    return path.read_bytes()[:8] == PNG


def test_trajectory_figure(tmp_path):
    p = ControlProblem(QuadraticUtilityParams(-2, 3), 0.6, 1.0, step=0.01)
    out = plot_trajectory(integrate_trajectory(p), analytic_trajectory(p), tmp_path / "sub" / "t.png")
    assert _is_png(out)


def test_membership_and_cml_figures(tmp_path):
    f = make_fuzzy_subset(RISK_CLASSES, [0.7, 0.4, 0.2, 0.1])
    assert _is_png(plot_membership(f, tmp_path / "m.png", title="profile"))
    assert _is_png(plot_cml(MarketParams(0.1, 0.05, 0.2), 0.12, 0.08, tmp_path / "c.png"))


def test_svg_output(tmp_path):
    f = make_fuzzy_subset(["X", "Y"], [0.25, 0.75])
    assert plot_membership(f, tmp_path / "m.svg").read_text().lstrip().startswith("<?xml")


def test_png_is_reproducible(tmp_path):
    f = make_fuzzy_subset(RISK_CLASSES, [0.7, 0.4, 0.2, 0.1])
    digests = {hashlib.sha256(plot_membership(f, tmp_path / f"{i}.png").read_bytes()).hexdigest() for i in range(2)}
    assert len(digests) == 1


@pytest.mark.parametrize(
    "command, scenario",
    [("classify", "case_2"), ("fuzziness", "fuzzy_profile"), ("trajectory", "trajectory_reference")],
)
def test_cli_writes_figure(tmp_path, capsys, command, scenario):
    fig = tmp_path / f"{command}.png"
    code = main([command, "--scenario", str(bundled_scenario(scenario)), "--figure", str(fig), "--out", str(tmp_path / "o.txt")])
    capsys.readouterr()
    assert code == 0
    assert _is_png(fig)


def test_classify_figure_needs_market(tmp_path, capsys):
    path = tmp_path / "s.ini"
    path.write_text("[utility]\na = -2\nb = 3\n")
    assert main(["classify", "--scenario", str(path), "--figure", str(tmp_path / "c.png")]) == 2

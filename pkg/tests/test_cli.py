import json

import pytest

from fuzzalloc.cli import main
from fuzzalloc.errors import ScenarioError
from fuzzalloc.scenario import bundled_scenario, bundled_scenarios, load_scenario, parse_scenario


@pytest.fixture
def write(tmp_path):
    def _write(text, name="s.ini"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestScenarioFormat:
    def test_template_parses_every_section(self):
        s = load_scenario(bundled_scenario("template"))
        assert s.utility.a == -2 and s.market.market_stdev == 0.2
        assert s.fuzzy.labels == ("C", "B", "A", "A+")
        assert s.preference[0] == (0.5, 1.0, 0.7)
        assert s.control.step == 0.001
        assert s.tolerances.metric_order.rho == 3
        assert s.tolerances.entropy_config(4).scale_k == 0.25

    def test_bundled(self):
        assert {"case_1", "case_2", "case_3", "case_4", "template"} <= set(bundled_scenarios())

    @pytest.mark.parametrize(
        "text, message",
        [
            ("", "no sections"),
            ("[utility]\na = 1\n", "missing b"),
            ("[utility]\na = 1\nb = 2\nc = 3\n", "unknown key"),
            ("[nonsense]\nx = 1\n", "unknown section"),
            ("[utility]\na = one\nb = 2\n", "not a number"),
            ("[market]\nexpected_return = 0.01\nrisk_free_rate = 0.05\nstdev = 0.2\n", "exceed"),
            ("[fuzzy]\nlabels = X, Y\ndegrees = 0.5, 1.5\n", r"outside \[0, 1\]"),
            ("[preference]\nmatrix =\n  0.5, x\n", "not numeric"),
            ("[tolerances]\nmetric_order = 1.5\n", "integer"),
            ("[tolerances]\nentropy_base = 1\n", "log_base"),
            ("no header\n", "header"),
        ],
    )
    def test_rejects(self, text, message):
        with pytest.raises(ScenarioError, match=message):
            parse_scenario(text)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ScenarioError):
            load_scenario(tmp_path / "nope.ini")


class TestClassify:
    def test_case_3_human(self, capsys):
        code, out, _ = run(capsys, "classify", "--scenario", str(bundled_scenario("case_3")))
        assert code == 0
        assert "class: B" in out
        assert "x*: 0.5\n" in out and "y*: 0.5\n" in out

    def test_leveraged_with_market(self, capsys, write):
        path = write("[utility]\na = 2\nb = 3\n[market]\nexpected_return = 0.10\nrisk_free_rate = 0.05\nstdev = 0.20\n")
        code, out, _ = run(capsys, "--machine", "classify", "--scenario", path)
        rec = json.loads(out)
        assert code == 0
        assert rec["class"] == "A+"
        assert rec["Sp*"] == 0.6
        assert rec["E(Rp)*"] == 0.2

    def test_degenerate_exit_2(self, capsys, write):
        code, out, err = run(capsys, "classify", "--scenario", write("[utility]\na = 3\nb = 3\n"))
        assert code == 2
        assert out == ""
        assert "a and b must differ" in err

    def test_flags_reported(self, capsys, write):
        code, out, _ = run(capsys, "classify", "--machine", "--scenario", write("[utility]\na = 3\nb = 2\n"))
        assert code == 0
        assert json.loads(out)["flags"][0].startswith("not-a-maximum")

    def test_missing_section(self, capsys, write):
        code, _, err = run(capsys, "classify", "--scenario", write("[fuzzy]\nlabels = X\ndegrees = 1\n"))
        assert code == 2
        assert "[utility]" in err

    def test_digits(self, capsys, write):
        path = write("[utility]\na = -1\nb = 2\n")
        _, out, _ = run(capsys, "classify", "--digits", "3", "--scenario", path)
        assert "x*: 0.667\n" in out

    def test_out_file(self, capsys, write, tmp_path):
        target = tmp_path / "report.txt"
        code, out, _ = run(capsys, "classify", "--scenario", str(bundled_scenario("case_4")), "--out", str(target))
        assert code == 0 and out == ""
        assert "class: C" in target.read_text()


class TestFuzziness:
    @pytest.mark.parametrize(
        "degrees, entropy, metric2",
        [("0.5, 0.5", 1.0, 1.0), ("1, 0", 0.0, 0.0), ("0.25, 0.75", 0.811278, 0.5)],
    )
    def test_measures(self, capsys, write, degrees, entropy, metric2):
        path = write(f"[fuzzy]\nlabels = X, Y\ndegrees = {degrees}\n")
        code, out, _ = run(capsys, "fuzziness", "--machine", "--scenario", path)
        rec = json.loads(out)
        assert code == 0
        assert rec["fuzz_entropy"] == pytest.approx(entropy, abs=1e-6)
        assert rec["fuzz_metric[rho=2]"] == pytest.approx(metric2, abs=1e-9)
        assert "fuzz_metric[rho=1]" in rec

    def test_crisp_all_zero(self, capsys, write):
        path = write("[fuzzy]\nlabels = X, Y\ndegrees = 1, 0\n")
        _, out, _ = run(capsys, "fuzziness", "--machine", "--scenario", path)
        rec = json.loads(out)
        assert rec["fuzz_entropy"] == 0 and rec["fuzz_metric[rho=1]"] == 0 and rec["fuzz_metric[rho=2]"] == 0

    def test_extra_orders(self, capsys):
        path = str(bundled_scenario("template"))
        _, out, _ = run(capsys, "fuzziness", "--machine", "--rho", "4", "--scenario", path)
        rec = json.loads(out)
        assert {"fuzz_metric[rho=3]", "fuzz_metric[rho=4]"} <= set(rec)
        assert rec["support"] == ["C", "B", "A", "A+"]
        assert rec["normal"] is False

    def test_bad_rho(self, capsys):
        code, _, _ = run(capsys, "fuzziness", "--rho", "0", "--scenario", str(bundled_scenario("template")))
        assert code == 2


class TestPreferenceCheck:
    def test_valid(self, capsys, write):
        code, out, _ = run(capsys, "preference-check", "--scenario", write("[preference]\nmatrix =\n  0.5, 1\n  0, 0.5\n"))
        assert code == 0 and "valid: yes" in out

    def test_reciprocity(self, capsys):
        code, out, _ = run(capsys, "preference-check", "--scenario", str(bundled_scenario("preference_invalid")))
        assert code == 3
        assert "(1,2)" in out

    def test_diagonal(self, capsys, write):
        code, out, _ = run(capsys, "preference-check", "--machine", "--scenario", write("[preference]\nmatrix =\n  0.4, 1\n  0, 0.5\n"))
        rec = json.loads(out)
        assert code == 3 and not rec["valid"]
        assert any("(1,1)" in v for v in rec["violations"])

    def test_malformed(self, capsys, write):
        code, _, err = run(capsys, "preference-check", "--scenario", write("[preference]\nmatrix =\n  0.5, 1\n  0.5\n"))
        assert code == 2
        assert "malformed" in err


class TestTrajectory:
    def test_table_on_stdout(self, capsys):
        code, out, err = run(capsys, "trajectory", "--scenario", str(bundled_scenario("trajectory_reference")))
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "t,x,y,x_analytic,abs_error"
        assert len(lines) == 1002
        t, x, y, xa, e = map(float, lines[-1].split(","))
        assert t == 1.0
        # 0.6 * exp(-2/3) = 0.30805027..., six significant digits
        assert x == 0.30805
        assert e < 1e-8
        assert "J: -1.3666" in err

    def test_zero_growth(self, capsys, write):
        path = write("[utility]\na = 0\nb = 3\n[control]\nx0 = 0.4\nhorizon = 1\nstep = 0.1\n")
        _, out, _ = run(capsys, "trajectory", "--scenario", path)
        rows = [r.split(",") for r in out.strip().splitlines()[1:]]
        assert {r[1] for r in rows} == {"0.4"}
        assert {r[4] for r in rows} == {"0"}

    def test_out_and_machine(self, capsys, tmp_path):
        target = tmp_path / "traj.tsv"
        code, out, _ = run(
            capsys, "trajectory", "--machine", "--delimiter", "\t", "--out", str(target),
            "--scenario", str(bundled_scenario("trajectory_reference")),
        )
        rec = json.loads(out)
        assert code == 0
        assert rec["samples"] == 1001 and rec["table"] == str(target)
        assert target.read_text().splitlines()[0] == "t\tx\ty\tx_analytic\tabs_error"

    def test_step_larger_than_horizon(self, capsys, write):
        path = write("[utility]\na = -2\nb = 3\n[control]\nx0 = 0.6\nhorizon = 1\nstep = 2\n")
        code, out, err = run(capsys, "trajectory", "--scenario", path)
        assert code == 2 and out == ""
        assert "exceeds" in err


class TestUsage:
    def test_no_scenario(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["classify"])
        assert exc.value.code == 2

    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["bogus", "--scenario", "x"])
        assert exc.value.code == 2

    def test_bad_digits(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["classify", "--digits", "0", "--scenario", "x"])
        assert exc.value.code == 2

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "classify", "--scenario", str(tmp_path / "missing.ini"))
        assert code == 2 and "cannot read" in err

    def test_flag_before_or_after_command(self, capsys):
        path = str(bundled_scenario("case_2"))
        _, before, _ = run(capsys, "--machine", "--scenario", path, "classify")
        _, after, _ = run(capsys, "classify", "--machine", "--scenario", path)
        assert before == after


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "fuzzalloc", "classify", "--scenario", str(bundled_scenario("case_1"))],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "class: A+" in proc.stdout

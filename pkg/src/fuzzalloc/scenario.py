"""Scenario files: sectioned ``key = value`` text read with :mod:`configparser`.

Sections and keys (every section is optional, at least one must be present)::

    [utility]      a, b
    [market]       expected_return, risk_free_rate, stdev
    [fuzzy]        labels, degrees              (comma-separated lists)
    [preference]   matrix                       (one comma-separated row per line)
    [control]      x0, horizon, step            (step optional)
    [tolerances]   class_tol, entropy_k, entropy_base, metric_order

Lines starting with ``#`` or ``;`` are comments, also after a value. See
``scenarios/template.ini`` inside the package for an annotated example.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from fuzzalloc.capm import MarketParams
from fuzzalloc.errors import FuzzAllocError, ScenarioError
from fuzzalloc.fuzziness import EntropyConfig, MetricOrder
from fuzzalloc.fuzzy import FuzzySubset, make_fuzzy_subset
from fuzzalloc.utility import DEFAULT_CLASS_TOL, QuadraticUtilityParams

KEYS = {
    "utility": {"a", "b"},
    "market": {"expected_return", "risk_free_rate", "stdev"},
    "fuzzy": {"labels", "degrees"},
    "preference": {"matrix"},
    "control": {"x0", "horizon", "step"},
    "tolerances": {"class_tol", "entropy_k", "entropy_base", "metric_order"},
}
REQUIRED = {
    "utility": {"a", "b"},
    "market": {"expected_return", "risk_free_rate", "stdev"},
    "fuzzy": {"labels", "degrees"},
    "preference": {"matrix"},
    "control": {"x0", "horizon"},
    "tolerances": set(),
}


@dataclass(frozen=True)
class ControlSettings:
    x0: float
    horizon: float
    step: float | None = None


@dataclass(frozen=True)
class Tolerances:
    class_tol: float = DEFAULT_CLASS_TOL
    entropy_k: float | None = None
    entropy_base: float = 2.0
    metric_order: MetricOrder | None = None

    def entropy_config(self, n: int) -> EntropyConfig:
        """Entropy settings for an ``n``-element subset; ``k`` defaults to ``1/n``."""
        if self.entropy_k is None:
            return EntropyConfig.normalized(n, self.entropy_base)
        return EntropyConfig(self.entropy_k, self.entropy_base)


@dataclass(frozen=True)
class Scenario:
    utility: QuadraticUtilityParams | None = None
    market: MarketParams | None = None
    fuzzy: FuzzySubset | None = None
    preference: tuple[tuple[float, ...], ...] | None = None
    control: ControlSettings | None = None
    tolerances: Tolerances = field(default_factory=Tolerances)
    source: str = ""


def _number(section, key) -> float:
    raw = section[key].strip()
    try:
        value = float(raw)
    except ValueError:
        raise ScenarioError(f"[{section.name}] {key}: {raw!r} is not a number") from None
    if not math.isfinite(value):
        raise ScenarioError(f"[{section.name}] {key}: value must be finite")
    return value


def _list(raw: str) -> list[str]:
    return [item.strip() for item in raw.replace("\n", ",").split(",") if item.strip()]


def _matrix(section) -> tuple[tuple[float, ...], ...]:
    rows = []
    for line in section["matrix"].strip().splitlines():
        if not line.strip():
            continue
        try:
            rows.append(tuple(float(v) for v in _list(line)))
        except ValueError:
            raise ScenarioError(f"[preference] matrix: row {line.strip()!r} is not numeric") from None
    if not rows:
        raise ScenarioError("[preference] matrix is empty")
    return tuple(rows)


def parse_scenario(text: str, source: str = "<string>") -> Scenario:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ScenarioError(f"{source}: {exc}") from exc

    sections = parser.sections()
    if not sections:
        raise ScenarioError(f"{source}: no sections found")
    for name in sections:
        if name not in KEYS:
            raise ScenarioError(f"{source}: unknown section [{name}]")
        keys = set(parser[name])
        unknown = keys - KEYS[name]
        if unknown:
            raise ScenarioError(f"{source}: unknown key(s) in [{name}]: {', '.join(sorted(unknown))}")
        missing = REQUIRED[name] - keys
        if missing:
            raise ScenarioError(f"{source}: [{name}] is missing {', '.join(sorted(missing))}")

    kw = {"source": source}
    try:
        if "utility" in parser:
            s = parser["utility"]
            kw["utility"] = QuadraticUtilityParams(_number(s, "a"), _number(s, "b"))
        if "market" in parser:
            s = parser["market"]
            kw["market"] = MarketParams(_number(s, "expected_return"), _number(s, "risk_free_rate"), _number(s, "stdev"))
        if "fuzzy" in parser:
            s = parser["fuzzy"]
            try:
                degrees = [float(v) for v in _list(s["degrees"])]
            except ValueError:
                raise ScenarioError("[fuzzy] degrees must be numbers") from None
            kw["fuzzy"] = make_fuzzy_subset(_list(s["labels"]), degrees)
        if "preference" in parser:
            kw["preference"] = _matrix(parser["preference"])
        if "control" in parser:
            s = parser["control"]
            step = _number(s, "step") if "step" in s else None
            kw["control"] = ControlSettings(_number(s, "x0"), _number(s, "horizon"), step)
        if "tolerances" in parser:
            s = parser["tolerances"]
            class_tol = _number(s, "class_tol") if "class_tol" in s else DEFAULT_CLASS_TOL
            if class_tol < 0:
                raise ScenarioError("[tolerances] class_tol must be >= 0")
            k = _number(s, "entropy_k") if "entropy_k" in s else None
            base = _number(s, "entropy_base") if "entropy_base" in s else 2.0
            EntropyConfig(1.0 if k is None else k, base)  # validates early
            order = None
            if "metric_order" in s:
                rho = _number(s, "metric_order")
                if rho != int(rho):
                    raise ScenarioError("[tolerances] metric_order must be an integer")
                order = MetricOrder(int(rho))
            kw["tolerances"] = Tolerances(class_tol, k, base, order)
    except ScenarioError:
        raise
    except FuzzAllocError as exc:
        raise ScenarioError(f"{source}: {exc}") from exc
    return Scenario(**kw)


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc.strerror or exc}") from exc
    return parse_scenario(text, source=str(path))


def bundled_scenario(name: str) -> Path:
    """Path of a scenario shipped with the package, e.g. ``"case_1"``."""
    ref = resources.files("fuzzalloc") / "scenarios" / f"{name}.ini"
    if not ref.is_file():
        raise ScenarioError(f"no bundled scenario named {name!r}")
    return Path(str(ref))


def bundled_scenarios() -> list[str]:
    root = resources.files("fuzzalloc") / "scenarios"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".ini"))

"""Feature vector assembly, normalization, instance-space projection and CSV I/O."""

from __future__ import annotations

import csv
import io
import math
import time
import warnings
from dataclasses import asdict, dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .cardinality import theorem3_z
from .clustering import DEFAULT_ALPHA, select_g_star
from .counting import counting_features, timed_number_ims_weight
from .errors import DegenerateFeatureWarning, MissingExternalFeature, StageError
from .instance import KnapsackInstance
from .logcount import format_logcount
from .lower_bound import solve_optimal, theorem2_lower_bound

FEATURE_NAMES = (
    "log2_num_ims",
    "min_total_weight",
    "max_total_weight",
    "mean_total_weight",
    "var_total_weight",
    "t1",
    "b",
    "f",
    "lb_profit",
    "g_star",
    "s_last",
    "t2",
    "z",
    "t3",
)
INTEGER_FEATURES = {"min_total_weight", "max_total_weight", "b", "f", "g_star", "s_last", "z"}
TIMING_FEATURES = ("t1", "t2", "t3")
# log2 is taken at normalization time; the count is already stored as log2
LOG_FEATURES = ("log2_num_ims",) + TIMING_FEATURES
NA = "NA"
DIAGNOSTIC_COLUMN = "noncanonical_solve_seconds"

EXTERNAL_FEATURES = (
    "first_weight",
    "smaller_better_pairs",
    "reduced_maximum_cardinality",
    "reduced_polyfit_linear",
)
PROJECTION_FEATURES = (
    "t1",
    "t2",
    "t3",
    "f",
    "min_total_weight",
) + EXTERNAL_FEATURES
# rows follow PROJECTION_FEATURES; columns are (z1, z2)
PROJECTION_MATRIX = np.array(
    [
        [0.2899, -0.2316],
        [0.2924, -0.2034],
        [-0.3407, -0.2515],
        [0.1679, -0.5357],
        [0.2802, -0.3762],
        [-0.0796, -0.5672],
        [0.4686, 0.6227],
        [0.3397, -0.3426],
        [-0.5083, 0.0148],
    ]
)


@dataclass(frozen=True)
class FeatureVector:
    """The 14 raw features. Clustering-based entries are None when n < 3."""

    log2_num_ims: float
    min_total_weight: int
    max_total_weight: int
    mean_total_weight: float
    var_total_weight: float
    t1: float
    b: int
    f: int
    lb_profit: float
    g_star: int | None
    s_last: int | None
    t2: float | None
    z: int | None
    t3: float | None

    def as_dict(self) -> dict:
        return asdict(self)

    def values(self) -> list:
        return [getattr(self, name) for name in FEATURE_NAMES]

    def without_timings(self) -> dict:
        return {k: v for k, v in self.as_dict().items() if k not in TIMING_FEATURES}


@dataclass(frozen=True)
class ExtractConfig:
    alpha: float = DEFAULT_ALPHA
    capacity_budget: int | None = None
    diagnostic_solve: bool = False


@dataclass(frozen=True)
class Extraction:
    features: FeatureVector
    solve_seconds: float | None = None


def _stage(name, fn, *args):
    try:
        return fn(*args)
    except Exception as exc:
        raise StageError(name, exc) from exc


def extract_full(inst: KnapsackInstance, config: ExtractConfig | None = None) -> Extraction:
    config = config or ExtractConfig()
    profile, t1 = _stage("ims_counting", timed_number_ims_weight, inst, config.capacity_budget)
    counting = _stage("ims_counting", counting_features, profile, t1)
    lb = _stage("lower_bound", theorem2_lower_bound, inst)
    g_star = s_last = t2 = z = t3 = None
    if inst.n >= 3:
        clus = _stage("weight_clustering", select_g_star, inst.weights, config.alpha)
        card = _stage("cardinality_bound", theorem3_z, inst, clus, config.capacity_budget)
        g_star, s_last, t2 = clus.g_star, clus.s_last, clus.t2
        z, t3 = card.z, card.t3
    solve_seconds = None
    if config.diagnostic_solve:
        start = time.perf_counter()
        _stage("solve_optimal", solve_optimal, inst)
        solve_seconds = time.perf_counter() - start
    fv = FeatureVector(
        log2_num_ims=counting.cardinality,
        min_total_weight=counting.min_weight,
        max_total_weight=counting.max_weight,
        mean_total_weight=counting.mean_weight,
        var_total_weight=counting.variance,
        t1=counting.t1,
        b=lb.b,
        f=lb.f,
        lb_profit=lb.lb_value,
        g_star=g_star,
        s_last=s_last,
        t2=t2,
        z=z,
        t3=t3,
    )
    return Extraction(fv, solve_seconds)


def extract(inst: KnapsackInstance, config: ExtractConfig | None = None) -> FeatureVector:
    return extract_full(inst, config).features


def domain_violations(fv: FeatureVector, inst: KnapsackInstance) -> list[str]:
    """Names of features that fall outside their documented ranges."""
    n, c = inst.n, inst.capacity
    bad = []

    def need(name, ok):
        if not ok:
            bad.append(f"{name}={getattr(fv, name)}")

    need("log2_num_ims", 0.0 <= fv.log2_num_ims <= n)
    for name in ("min_total_weight", "max_total_weight", "mean_total_weight"):
        need(name, 1 <= getattr(fv, name) <= c)
    need("var_total_weight", 0.0 <= fv.var_total_weight <= c * c)
    need("b", 1 <= fv.b <= n)
    need("f", 1 <= fv.f <= n)
    need("lb_profit", 0.0 <= fv.lb_profit <= sum(inst.profits))
    need("t1", fv.t1 > 0)
    if n >= 3:
        need("g_star", 2 <= fv.g_star <= n - 1)
        need("s_last", 1 <= fv.s_last <= n + 1 - fv.g_star)
        need("z", 0 <= fv.z <= fv.s_last)
        need("t2", fv.t2 > 0)
        need("t3", fv.t3 > 0)
    return bad


# ---------------------------------------------------------------------------
# CSV

def _fmt(name: str, value) -> str:
    if value is None:
        return NA
    if name == "log2_num_ims":
        return format_logcount(value)
    if name in INTEGER_FEATURES:
        return str(int(value))
    return repr(float(value))


def _parse(name: str, token: str):
    if token == NA:
        return None
    if name in INTEGER_FEATURES:
        return int(token)
    return float(token)


def write_feature_csv(rows: Iterable[tuple[str, FeatureVector]], out, solve_seconds=None) -> None:
    """Write ``(instance_id, vector)`` rows with a fixed header.

    ``solve_seconds`` (optional mapping id -> seconds) adds one diagnostic column.
    """
    writer = csv.writer(out, lineterminator="\n")
    header = ["instance", *FEATURE_NAMES]
    if solve_seconds is not None:
        header.append(DIAGNOSTIC_COLUMN)
    writer.writerow(header)
    for instance_id, fv in rows:
        row = [instance_id] + [_fmt(name, getattr(fv, name)) for name in FEATURE_NAMES]
        if solve_seconds is not None:
            sec = solve_seconds.get(instance_id)
            row.append(NA if sec is None else repr(float(sec)))
        writer.writerow(row)


def export_csv(rows: Iterable[tuple[str, FeatureVector]], path, solve_seconds=None) -> None:
    with open(path, "w", newline="") as fh:
        write_feature_csv(rows, fh, solve_seconds)


def read_feature_csv(source) -> list[tuple[str, FeatureVector]]:
    """Inverse of ``write_feature_csv``; accepts a path or an open text file."""
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, newline="") as fh:
            return read_feature_csv(fh)
    reader = csv.DictReader(source)
    missing = [n for n in FEATURE_NAMES if n not in (reader.fieldnames or [])]
    if missing:
        raise ValueError(f"feature CSV lacks columns {missing}")
    out = []
    for rec in reader:
        kwargs = {name: _parse(name, rec[name]) for name in FEATURE_NAMES}
        out.append((rec["instance"], FeatureVector(**kwargs)))
    return out


def features_to_csv_text(rows) -> str:
    buf = io.StringIO()
    write_feature_csv(rows, buf)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# normalization

@dataclass
class Normalizer:
    """Per-feature rule: "log2" or ("minmax", lo, hi). Fit once, apply anywhere."""

    minmax: dict[str, tuple[float, float]]
    degenerate: frozenset[str] = frozenset()

    def normalize(self, fv: FeatureVector | Mapping[str, float]) -> dict[str, float]:
        raw = fv.as_dict() if isinstance(fv, FeatureVector) else dict(fv)
        out = {}
        for name in FEATURE_NAMES:
            value = raw.get(name)
            if value is None:
                out[name] = math.nan
            elif name == "log2_num_ims":
                out[name] = float(value)
            elif name in TIMING_FEATURES:
                out[name] = math.log2(value)
            else:
                lo, hi = self.minmax[name]
                out[name] = 0.0 if hi == lo else (float(value) - lo) / (hi - lo)
        return out

    def denormalize(self, values: Mapping[str, float]) -> dict[str, float]:
        out = {}
        for name in FEATURE_NAMES:
            v = values[name]
            if math.isnan(v):
                out[name] = None
            elif name == "log2_num_ims":
                out[name] = v
            elif name in TIMING_FEATURES:
                out[name] = 2.0**v
            else:
                lo, hi = self.minmax[name]
                out[name] = lo + v * (hi - lo)
        return out

    def dumps(self) -> str:
        lines = [f"{name} = log2" for name in LOG_FEATURES]
        for name, (lo, hi) in self.minmax.items():
            flag = " degenerate" if name in self.degenerate else ""
            lines.append(f"{name} = minmax {lo!r} {hi!r}{flag}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Normalizer":
        minmax, degenerate = {}, set()
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            name, _, rule = (part.strip() for part in line.partition("="))
            parts = rule.split()
            if parts == ["log2"] and name in LOG_FEATURES:
                continue
            if len(parts) in (3, 4) and parts[0] == "minmax" and name in FEATURE_NAMES:
                minmax[name] = (float(parts[1]), float(parts[2]))
                if parts[3:] == ["degenerate"]:
                    degenerate.add(name)
                continue
            raise ValueError(f"line {lineno}: cannot read normalization entry {line!r}")
        missing = set(FEATURE_NAMES) - set(LOG_FEATURES) - set(minmax)
        if missing:
            raise ValueError(f"normalization parameters lack {sorted(missing)}")
        return cls(minmax=minmax, degenerate=frozenset(degenerate))

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.dumps())

    @classmethod
    def load(cls, path) -> "Normalizer":
        with open(path) as fh:
            return cls.loads(fh.read())


def fit_normalizer(vectors: Sequence[FeatureVector]) -> Normalizer:
    """Min-max ranges over the corpus for all non-log features (NA entries skipped)."""
    minmax, degenerate = {}, set()
    for name in FEATURE_NAMES:
        if name in LOG_FEATURES:
            continue
        vals = [getattr(v, name) for v in vectors if getattr(v, name) is not None]
        if not vals:
            minmax[name] = (0.0, 0.0)
            degenerate.add(name)
            continue
        lo, hi = float(min(vals)), float(max(vals))
        minmax[name] = (lo, hi)
        if lo == hi:
            degenerate.add(name)
    if degenerate:
        warnings.warn(
            f"constant over the corpus, normalized to 0: {sorted(degenerate)}",
            DegenerateFeatureWarning,
            stacklevel=2,
        )
    return Normalizer(minmax=minmax, degenerate=frozenset(degenerate))


# ---------------------------------------------------------------------------
# projection

@dataclass(frozen=True)
class ProjectionPoint:
    z1: float
    z2: float


def projection_inputs(
    normalized: Mapping[str, float], external: Mapping[str, float] | None = None
) -> np.ndarray:
    """Assemble the 9 projection inputs in matrix row order."""
    merged = dict(normalized)
    merged.update(external or {})
    missing_ext = [
        name for name in EXTERNAL_FEATURES
        if merged.get(name) is None or math.isnan(merged[name])
    ]
    if missing_ext:
        raise MissingExternalFeature(
            f"externally supplied features missing: {', '.join(missing_ext)}"
        )
    values = []
    for name in PROJECTION_FEATURES:
        v = merged.get(name)
        if v is None or math.isnan(v):
            raise ValueError(f"projection input {name!r} is NA")
        values.append(float(v))
    return np.array(values)


def project(features: Sequence[float] | Mapping[str, float]) -> ProjectionPoint:
    """Map the 9 normalized inputs to instance-space coordinates (z1, z2)."""
    if isinstance(features, Mapping):
        x = projection_inputs(features)
    else:
        x = np.asarray(features, dtype=np.float64)
        if x.shape != (len(PROJECTION_FEATURES),):
            raise MissingExternalFeature(
                f"expected {len(PROJECTION_FEATURES)} inputs, got shape {x.shape}"
            )
        if np.isnan(x[-len(EXTERNAL_FEATURES):]).any():
            raise MissingExternalFeature("externally supplied features are NA")
    z1, z2 = PROJECTION_MATRIX.T @ x
    return ProjectionPoint(float(z1), float(z2))

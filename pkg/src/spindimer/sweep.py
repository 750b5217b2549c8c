"""Deterministic two-parameter sweeps of the dimer quantifiers.

A sweep evaluates the requested quantifiers on an x-major grid (x outermost,
y ascending innermost; point index n = ix * steps_y + iy). Evaluation is
vectorized over fixed-size chunks, so the numbers are bitwise independent of
the worker count, and the CSV output is byte-identical across runs.

Every sweep re-checks at least 1% of its own points through a fully
independent route (spectral Gibbs oracle plus the per-point quantifier
functions). Any float column deviating by more than 1e-9 aborts the sweep
with SweepError. The subsample is drawn by an RNG seeded from a hash of the
canonical sweep definition, so it is reproducible too. Boolean and label
columns are deterministic functions of the checked floats and are not
compared directly (a value within 1e-9 of a decision boundary may label
differently between routes).

Temperature semantics: a swept t axis must start above 0; a fixed t = 0
selects the zero-temperature plane, where the `phase` column is populated
and degenerate ground states are flagged (JSON output only; the CSV column
set is fixed).
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from ._version import __version__
from .measures import (
    Phase,
    coherence_l1,
    coherence_relative,
    negativity,
)
from .model import ModelParams, spin_operators
from .steering import AXES, STEERING_BOUND, measurement_bases, steering_value
from .thermal import gibbs_oracle, ground_state

__all__ = [
    "PARAM_NAMES",
    "QUANTITIES",
    "CSV_HEADER",
    "SCHEMA_VERSION",
    "SweepAxis",
    "GridSpec",
    "GridResult",
    "SweepError",
    "run_sweep",
    "write_table",
    "canonical_spec_json",
    "spec_seed",
]

PARAM_NAMES = ("h", "d_ani", "delta", "t")
QUANTITIES = ("c_l1", "c_r", "negativity", "steering", "phase")
CSV_HEADER = "x_name,y_name,c_l1,c_r,negativity,steering_s,steerable,phase"
SCHEMA_VERSION = "1"

_CHUNK = 2048
_SUBSAMPLE_FRACTION = 0.01
_SUBSAMPLE_TOL = 1e-9
_PHASE_TOL = 1e-6
_PHASE_LABELS = (
    Phase.REGION_I.value,
    Phase.REGION_II.value,
    Phase.REGION_III.value,
    Phase.UNCLASSIFIED.value,
)


class SweepError(RuntimeError):
    """Raised when a sweep fails its independent subsample cross-check."""


@dataclass(frozen=True)
class SweepAxis:
    """One swept parameter: `steps` evenly spaced values in [min, max]."""

    name: str
    min: float
    max: float
    steps: int

    def __post_init__(self) -> None:
        if self.name not in PARAM_NAMES:
            raise ValueError(f"axis name {self.name!r} not in {PARAM_NAMES}")
        if not (math.isfinite(self.min) and math.isfinite(self.max)):
            raise ValueError("axis bounds must be finite")
        if not self.min < self.max:
            raise ValueError(f"axis needs min < max, got [{self.min}, {self.max}]")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError(f"axis needs integer steps >= 2, got {self.steps!r}")
        if self.name == "t" and self.min <= 0.0:
            raise ValueError("a swept t axis must start above 0; use fixed t=0 for the zero-T plane")

    def grid(self) -> np.ndarray:
        return np.linspace(self.min, self.max, int(self.steps))


@dataclass(frozen=True)
class GridSpec:
    """Complete definition of one sweep: two axes, fixed values, quantities.

    Fixed values for swept parameter names are ignored. `quantities` may be
    any nonempty subset of ("c_l1", "c_r", "negativity", "steering",
    "phase"); `phase` fills only on the zero-T plane (fixed t = 0).
    """

    axis_x: SweepAxis
    axis_y: SweepAxis
    t: float = 0.0
    j: float = 1.0
    delta: float = 0.0
    d_ani: float = 0.0
    h: float = 0.0
    quantities: tuple[str, ...] = QUANTITIES
    degeneracy_tol: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "quantities", tuple(self.quantities))
        if self.axis_x.name == self.axis_y.name:
            raise ValueError(f"axes must sweep distinct parameters, both are {self.axis_x.name!r}")
        if not self.quantities:
            raise ValueError("quantities must be nonempty")
        bad = [q for q in self.quantities if q not in QUANTITIES]
        if bad:
            raise ValueError(f"unknown quantities {bad}, expected from {QUANTITIES}")
        if len(set(self.quantities)) != len(self.quantities):
            raise ValueError(f"duplicate quantities in {self.quantities}")
        for name in ("t", "j", "delta", "d_ani", "h"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"fixed {name} must be finite")
        if self.j <= 0.0:
            raise ValueError(f"j must be positive, got {self.j!r}")
        if "t" not in self.swept_names and self.t < 0.0:
            raise ValueError(f"fixed t must be >= 0, got {self.t!r}")
        if self.degeneracy_tol is not None and not (
            math.isfinite(self.degeneracy_tol) and self.degeneracy_tol >= 0.0
        ):
            raise ValueError(f"degeneracy_tol must be non-negative, got {self.degeneracy_tol!r}")

    @property
    def swept_names(self) -> tuple[str, str]:
        return (self.axis_x.name, self.axis_y.name)

    @property
    def zero_t(self) -> bool:
        return "t" not in self.swept_names and self.t == 0.0

    def to_dict(self) -> dict:
        def axis(a: SweepAxis) -> dict:
            return {"name": a.name, "min": a.min, "max": a.max, "steps": int(a.steps)}

        return {
            "axis_x": axis(self.axis_x),
            "axis_y": axis(self.axis_y),
            "t": self.t,
            "j": self.j,
            "delta": self.delta,
            "d_ani": self.d_ani,
            "h": self.h,
            "quantities": list(self.quantities),
            "degeneracy_tol": self.degeneracy_tol,
        }

    @staticmethod
    def from_dict(data: dict) -> "GridSpec":
        known = {"axis_x", "axis_y", "t", "j", "delta", "d_ani", "h", "quantities", "degeneracy_tol"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown sweep config keys {sorted(unknown)}")
        for key in ("axis_x", "axis_y"):
            if key not in data:
                raise ValueError(f"sweep config is missing {key!r}")

        def axis(d: dict) -> SweepAxis:
            extra = set(d) - {"name", "min", "max", "steps"}
            if extra:
                raise ValueError(f"unknown axis keys {sorted(extra)}")
            return SweepAxis(
                name=str(d["name"]), min=float(d["min"]), max=float(d["max"]), steps=int(d["steps"])
            )

        kwargs: dict = {"axis_x": axis(data["axis_x"]), "axis_y": axis(data["axis_y"])}
        for key in ("t", "j", "delta", "d_ani", "h"):
            if key in data:
                kwargs[key] = float(data[key])
        if "quantities" in data:
            kwargs["quantities"] = tuple(str(q) for q in data["quantities"])
        if data.get("degeneracy_tol") is not None:
            kwargs["degeneracy_tol"] = float(data["degeneracy_tol"])
        return GridSpec(**kwargs)


def canonical_spec_json(spec: GridSpec) -> str:
    """Key-sorted compact JSON; the identity of a sweep definition."""
    return json.dumps(spec.to_dict(), sort_keys=True, separators=(",", ":"))


def spec_seed(spec: GridSpec) -> int:
    """Subsample RNG seed: first 8 bytes of the spec's SHA-256."""
    digest = hashlib.sha256(canonical_spec_json(spec).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass
class GridResult:
    """Columnar sweep output.

    values holds float columns keyed by "c_l1", "c_r", "negativity",
    "steering_s" (only the requested ones). steerable/phase/degenerate are
    None when not applicable.
    """

    spec: GridSpec
    x: np.ndarray
    y: np.ndarray
    values: dict[str, np.ndarray]
    steerable: np.ndarray | None
    phase: np.ndarray | None
    degenerate: np.ndarray | None
    metadata: dict


# ---------------------------------------------------------------------------
# Vectorized evaluation kernels. These intentionally do not share code with
# the per-point functions in thermal/measures/steering: the subsample check
# compares the two routes against each other.

_SQRT8 = 2.0 * math.sqrt(2.0)


def _hamiltonian_terms() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    ops = spin_operators()
    eye = np.eye(3)
    sz2 = ops.sz @ ops.sz
    hx = np.kron(ops.sx, ops.sx) - np.kron(ops.sy_imag, ops.sy_imag)
    hzz = np.kron(ops.sz, ops.sz)
    hd = np.kron(sz2, eye) + np.kron(eye, sz2)
    hz = np.kron(ops.sz, eye) + np.kron(eye, ops.sz)
    return hx, hzz, hd, hz


_HX, _HZZ, _HD, _HZ = _hamiltonian_terms()


def _measurement_stacks() -> dict[str, tuple[np.ndarray, np.ndarray]]:
    stacks = {}
    for axis, basis in measurement_bases().items():
        vr, vi = basis.amps_real, basis.amps_imag
        pair_ops = np.empty((9, 9, 9))
        for a in range(3):
            for b in range(3):
                tr = np.kron(vr[a], vr[b]) - np.kron(vi[a], vi[b])
                ti = np.kron(vr[a], vi[b]) + np.kron(vi[a], vr[b])
                pair_ops[3 * a + b] = np.outer(tr, tr) + np.outer(ti, ti)
        marg_ops = np.einsum("oi,oj->oij", vr, vr) + np.einsum("oi,oj->oij", vi, vi)
        stacks[axis] = (pair_ops, marg_ops)
    return stacks


_MEAS = _measurement_stacks()


def _entropy_rows(p: np.ndarray) -> np.ndarray:
    """Row-wise Shannon entropy in bits; entries below 1e-14 contribute 0."""
    live = p > 1e-14
    safe = np.where(live, p, 1.0)
    return -(np.where(live, p, 0.0) * np.log2(safe)).sum(axis=-1)


def _gibbs_stack(
    j: float, delta: np.ndarray, d: np.ndarray, h: np.ndarray, t: np.ndarray
) -> np.ndarray:
    """Closed-form Gibbs states for a batch of parameter points."""
    gap = delta - 2.0 * d
    r = np.hypot(gap, _SQRT8 * j)
    e = np.stack(
        [
            delta + 2.0 * d - 2.0 * h,
            j + d + h,
            -j + d + h,
            delta + 2.0 * d + 2.0 * h,
            -delta / 2.0 + d + r / 2.0,
            -delta / 2.0 + d - r / 2.0,
            -delta + 2.0 * d,
            j + d - h,
            -j + d - h,
        ],
        axis=-1,
    )
    b = 1.0 / (t * j)
    w = np.exp(-(e - e.min(axis=1, keepdims=True)) * b[:, None])
    lam_p = (gap + r) / (2.0 * j)
    lam_m = (gap - r) / (2.0 * j)
    w5 = w[:, 4] / (2.0 + lam_p**2)
    w6 = w[:, 5] / (2.0 + lam_m**2)
    w7 = w[:, 6] / 2.0

    m = delta.shape[0]
    rho = np.zeros((m, 9, 9))
    rho[:, 0, 0] = w[:, 0]
    rho[:, 8, 8] = w[:, 3]
    d11 = 0.5 * (w[:, 7] + w[:, 8])
    o13 = 0.5 * (w[:, 7] - w[:, 8])
    d55 = 0.5 * (w[:, 1] + w[:, 2])
    o57 = 0.5 * (w[:, 1] - w[:, 2])
    rho[:, 1, 1] = d11
    rho[:, 3, 3] = d11
    rho[:, 1, 3] = o13
    rho[:, 3, 1] = o13
    rho[:, 5, 5] = d55
    rho[:, 7, 7] = d55
    rho[:, 5, 7] = o57
    rho[:, 7, 5] = o57
    d22 = w5 + w6 + w7
    o24 = lam_p * w5 + lam_m * w6
    o26 = w5 + w6 - w7
    rho[:, 2, 2] = d22
    rho[:, 6, 6] = d22
    rho[:, 2, 4] = o24
    rho[:, 4, 2] = o24
    rho[:, 4, 6] = o24
    rho[:, 6, 4] = o24
    rho[:, 2, 6] = o26
    rho[:, 6, 2] = o26
    rho[:, 4, 4] = lam_p**2 * w5 + lam_m**2 * w6
    rho /= np.einsum("nii->n", rho)[:, None, None]
    return rho


def _ground_stack(
    j: float, delta: np.ndarray, d: np.ndarray, h: np.ndarray, tol: float
) -> tuple[np.ndarray, np.ndarray]:
    """Ground-space projectors (normalized) and ground ranks, batched."""
    ham = (
        j * _HX[None, :, :]
        + delta[:, None, None] * _HZZ
        + d[:, None, None] * _HD
        - h[:, None, None] * _HZ
    )
    w, v = np.linalg.eigh(ham)
    mask = (w - w[:, :1]) <= tol
    rank = mask.sum(axis=1)
    sel = v * mask[:, None, :]
    rho = sel @ sel.transpose(0, 2, 1)
    rho /= rank[:, None, None]
    return rho, rank


def _eval_chunk(payload: dict) -> dict:
    """Evaluate one chunk of grid points; returns column slices."""
    quantities = payload["quantities"]
    zero_t = payload["zero_t"]
    delta, d, h = payload["delta"], payload["d_ani"], payload["h"]
    rank = None
    if zero_t:
        rho, rank = _ground_stack(payload["j"], delta, d, h, payload["tol"])
    else:
        rho = _gibbs_stack(payload["j"], delta, d, h, payload["t"])

    out: dict[str, np.ndarray] = {}
    diag = np.einsum("nii->ni", rho)
    if "c_l1" in quantities:
        out["c_l1"] = np.abs(rho).sum(axis=(1, 2)) - np.abs(diag).sum(axis=1)
    if "c_r" in quantities:
        mu = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
        out["c_r"] = _entropy_rows(np.clip(diag, 0.0, None)) - _entropy_rows(mu)
    need_negativity = "negativity" in quantities or ("phase" in quantities and zero_t)
    if need_negativity:
        pt = rho.reshape(-1, 3, 3, 3, 3).transpose(0, 3, 2, 1, 4).reshape(-1, 9, 9)
        wpt = np.linalg.eigvalsh(pt)
        neg = np.maximum(0.0, 0.5 * (np.abs(wpt).sum(axis=1) - 1.0))
        if "negativity" in quantities:
            out["negativity"] = neg
    if "steering" in quantities:
        s = np.full(rho.shape[0], 16.0 / 3.0)
        rho_a = np.einsum("naibi->nab", rho.reshape(-1, 3, 3, 3, 3))
        for axis in AXES:
            pair_ops, marg_ops = _MEAS[axis]
            pj = np.clip(np.einsum("oij,nij->no", pair_ops, rho), 0.0, None)
            pa = np.clip(np.einsum("oab,nab->no", marg_ops, rho_a), 0.0, None)
            s -= _entropy_rows(pj) - _entropy_rows(pa)
        out["steering_s"] = s
        out["steerable"] = s > STEERING_BOUND
    if "phase" in quantities and zero_t:
        out["phase_code"] = np.select(
            [np.abs(neg - 1.0) <= _PHASE_TOL, np.abs(neg - 0.5) <= _PHASE_TOL, neg <= _PHASE_TOL],
            [0, 1, 2],
            default=3,
        )
    if rank is not None:
        out["degenerate"] = rank > 1
    return out


# ---------------------------------------------------------------------------


def run_sweep(spec: GridSpec, workers: int = 1) -> GridResult:
    """Evaluate a sweep; deterministic for a given spec regardless of workers."""
    if int(workers) != workers or workers < 1:
        raise ValueError(f"workers must be a positive integer, got {workers!r}")
    workers = int(workers)

    xs = spec.axis_x.grid()
    ys = spec.axis_y.grid()
    n = xs.size * ys.size
    x = np.repeat(xs, ys.size)
    y = np.tile(ys, xs.size)

    arrays = {
        "delta": np.full(n, spec.delta),
        "d_ani": np.full(n, spec.d_ani),
        "h": np.full(n, spec.h),
        "t": np.full(n, spec.t),
    }
    arrays[spec.axis_x.name] = x
    arrays[spec.axis_y.name] = y
    tol = 1e-9 * spec.j if spec.degeneracy_tol is None else spec.degeneracy_tol

    if not spec.zero_t and float(arrays["t"].min()) <= 0.0:
        raise ValueError("fixed t must be positive for a finite-temperature sweep")

    # Phase derives from negativity; evaluate it even when not requested so
    # the subsample cross-check always has a float column to compare.
    eval_quantities = spec.quantities
    if "phase" in eval_quantities and spec.zero_t and "negativity" not in eval_quantities:
        eval_quantities = eval_quantities + ("negativity",)

    bounds = [(s, min(s + _CHUNK, n)) for s in range(0, n, _CHUNK)]
    payloads = (
        {
            "j": spec.j,
            "delta": arrays["delta"][s:e],
            "d_ani": arrays["d_ani"][s:e],
            "h": arrays["h"][s:e],
            "t": arrays["t"][s:e],
            "zero_t": spec.zero_t,
            "tol": tol,
            "quantities": eval_quantities,
        }
        for s, e in bounds
    )
    if workers == 1:
        chunks = [_eval_chunk(p) for p in payloads]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_eval_chunk, payloads))

    merged = {key: np.concatenate([c[key] for c in chunks]) for key in chunks[0]}
    checkable = {
        key: merged[key]
        for key in ("c_l1", "c_r", "negativity", "steering_s")
        if key in merged
    }
    checked, max_dev = _subsample_check(spec, arrays, tol, checkable, n)

    requested = set(spec.quantities)
    values = {
        key: col
        for key, col in checkable.items()
        if ("steering" if key == "steering_s" else key) in requested
    }
    steerable = merged.get("steerable")
    phase = None
    if "phase_code" in merged:
        phase = np.array([_PHASE_LABELS[c] for c in merged["phase_code"]], dtype=object)
    degenerate = merged.get("degenerate")

    metadata = {
        "package_version": __version__,
        "created_utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "points": int(n),
        "workers": workers,
        "subsample_points": checked,
        "subsample_max_deviation": max_dev,
    }
    return GridResult(
        spec=spec,
        x=x,
        y=y,
        values=values,
        steerable=steerable,
        phase=phase,
        degenerate=degenerate,
        metadata=metadata,
    )


def _subsample_check(
    spec: GridSpec,
    arrays: dict[str, np.ndarray],
    tol: float,
    values: dict[str, np.ndarray],
    n: int,
) -> tuple[int, float]:
    """Recompute >= 1% of points through the independent per-point route."""
    if not values:
        return 0, 0.0
    rng = np.random.default_rng(spec_seed(spec))
    k = max(1, math.ceil(_SUBSAMPLE_FRACTION * n))
    indices = np.sort(rng.choice(n, size=k, replace=False))
    max_dev = 0.0
    for i in indices:
        params = ModelParams(
            j=spec.j,
            delta=float(arrays["delta"][i]),
            d_ani=float(arrays["d_ani"][i]),
            h=float(arrays["h"][i]),
        )
        if spec.zero_t:
            state = ground_state(params, tol)
        else:
            state = gibbs_oracle(params, float(arrays["t"][i]))
        reference = {}
        if "c_l1" in values:
            reference["c_l1"] = coherence_l1(state.rho)
        if "c_r" in values:
            reference["c_r"] = coherence_relative(state.rho)
        if "negativity" in values:
            reference["negativity"] = negativity(state.rho)
        if "steering_s" in values:
            reference["steering_s"] = steering_value(state.rho).s_value
        for key, ref in reference.items():
            dev = abs(float(values[key][i]) - ref)
            max_dev = max(max_dev, dev)
            if dev > _SUBSAMPLE_TOL:
                raise SweepError(
                    f"subsample cross-check failed at point {i} "
                    f"({params}, t={arrays['t'][i]!r}): "
                    f"{key} sweep={values[key][i]!r} oracle={ref!r} dev={dev:.3e}"
                )
    return k, max_dev


# ---------------------------------------------------------------------------


def _fmt(v: float) -> str:
    return "%.12g" % v


def _csv_lines(result: GridResult):
    yield CSV_HEADER
    vals = result.values
    c1 = vals.get("c_l1")
    cr = vals.get("c_r")
    ng = vals.get("negativity")
    st = vals.get("steering_s")
    steer = result.steerable
    phase = result.phase
    for i in range(result.x.size):
        cells = (
            _fmt(result.x[i]),
            _fmt(result.y[i]),
            _fmt(c1[i]) if c1 is not None else "",
            _fmt(cr[i]) if cr is not None else "",
            _fmt(ng[i]) if ng is not None else "",
            _fmt(st[i]) if st is not None else "",
            ("true" if steer[i] else "false") if steer is not None else "",
            str(phase[i]) if phase is not None else "",
        )
        yield ",".join(cells)


def _json_payload(result: GridResult) -> dict:
    vals = result.values
    rows = []
    for i in range(result.x.size):
        row = {
            "x": float(result.x[i]),
            "y": float(result.y[i]),
            "c_l1": float(vals["c_l1"][i]) if "c_l1" in vals else None,
            "c_r": float(vals["c_r"][i]) if "c_r" in vals else None,
            "negativity": float(vals["negativity"][i]) if "negativity" in vals else None,
            "steering_s": float(vals["steering_s"][i]) if "steering_s" in vals else None,
            "steerable": bool(result.steerable[i]) if result.steerable is not None else None,
            "phase": str(result.phase[i]) if result.phase is not None else None,
        }
        if result.degenerate is not None:
            row["degenerate"] = bool(result.degenerate[i])
        rows.append(row)
    return {
        "schema_version": SCHEMA_VERSION,
        "spec": result.spec.to_dict(),
        "metadata": result.metadata,
        "rows": rows,
    }


def write_table(result: GridResult, path: str, fmt: str = "csv") -> None:
    """Write a sweep result as CSV (byte-stable) or JSON (with metadata)."""
    if fmt == "csv":
        text = "\n".join(_csv_lines(result)) + "\n"
    elif fmt == "json":
        text = json.dumps(_json_payload(result), indent=2, allow_nan=False) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}, expected 'csv' or 'json'")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)

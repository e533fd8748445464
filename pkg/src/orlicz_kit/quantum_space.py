"""Noncommutative Orlicz spaces over finite matrix algebras.

Matrices with the counting (or scaled) trace stand in for the general
semifinite algebra; unbounded phenomena enter only through parametric
decreasing profiles.  The generalized singular values of a matrix are its
singular values sorted decreasingly, laid out as a step profile whose
lengths are trace masses; with that identification the trace modular
tau(Psi(|a|/lambda)) and the profile modular integral Psi(mu_t(a)/lambda) dt
are the same finite spectral sum, and the noncommutative Luxemburg norm is
the classical one of the singular profile.

Weighted spaces replace Lebesgue measure on (0, inf) by mu_t(x) dt for a
positive integrable weight x.  The admissibility record kept alongside a
weighted space witnesses the two Banach-function-space hypotheses on the
canonical exhaustion E = (0, k]: the indicator has finite weighted norm, and
a Hoelder constant C_E = ||chi_E||_Orl(complement) dominates the local L^1
pairing.

The quantum regularity test computes the parameter interval on which
integral exp(t mu_s(g)) mu_s(x) ds is finite and applies the interior
criterion literally to the one-sided interval (the transform uses the
nonnegative mu_s(g), so only the upper endpoint can be finite).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .classical_space import (
    DomainInterval,
    MembershipReport,
    NormReport,
    luxemburg_norm,
    membership,
    orlicz_norm,
)
from .errors import DimensionMismatchError, DomainError
from .rearrange import (
    DecreasingProfile,
    InvPowerSingularity,
    LogSingularity,
    ZeroTail,
    _WeightView,
    hl_partial,
)
from .young import YoungFunction, complement, cosh_minus_1

__all__ = [
    "MatrixObservable",
    "TraceFunctional",
    "counting_trace",
    "scaled_trace",
    "singular_values",
    "singular_profile",
    "kunze_modular",
    "nc_norm",
    "AdmissibilityRecord",
    "WeightedQuantumSpace",
    "weighted_nc_norm",
    "QuantumRegularityReport",
    "quantum_regular_check",
    "QPSCrossCheck",
    "quantum_pistone_sempi_crosscheck",
    "nc_entropy",
    "load_matrix",
    "matrix_from_dict",
]

_HERMITIAN_TOL = 1e-12
_EIG_ZERO_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class MatrixObservable:
    """An n x n complex matrix over the finite-dimensional algebra."""

    entries: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        arr = np.array(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise DimensionMismatchError("matrix must be square with dim >= 1")
        if self.hermitian:
            scale = float(np.max(np.abs(arr))) or 1.0
            if float(np.max(np.abs(arr - arr.conj().T))) > _HERMITIAN_TOL * scale:
                raise DomainError("hermitian flag set but the matrix is not hermitian")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @staticmethod
    def from_array(a, hermitian: bool | None = None) -> "MatrixObservable":
        arr = np.asarray(a, dtype=complex)
        if hermitian is None:
            scale = float(np.max(np.abs(arr))) or 1.0
            hermitian = bool(
                arr.ndim == 2
                and arr.shape[0] == arr.shape[1]
                and float(np.max(np.abs(arr - arr.conj().T))) <= _HERMITIAN_TOL * scale
            )
        return MatrixObservable(arr, hermitian)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "entries": [
                [[float(z.real), float(z.imag)] for z in row] for row in self.entries
            ],
        }


def matrix_from_dict(d: dict) -> MatrixObservable:
    entries = d["entries"]
    arr = np.empty((len(entries), len(entries)), dtype=complex)
    for i, row in enumerate(entries):
        for j, z in enumerate(row):
            arr[i, j] = complex(z[0], z[1]) if isinstance(z, (list, tuple)) else complex(z)
    if "dim" in d and int(d["dim"]) != arr.shape[0]:
        raise DimensionMismatchError("declared dim does not match entries")
    return MatrixObservable.from_array(arr)


def load_matrix(path) -> MatrixObservable:
    with open(path, encoding="utf-8") as fh:
        return matrix_from_dict(json.load(fh))


@dataclass(frozen=True)
class TraceFunctional:
    """Counting trace Tr, optionally scaled by a constant c > 0."""

    scale: float = 1.0

    def __post_init__(self):
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise DomainError("trace scale must be positive and finite")

    def value(self, a: MatrixObservable) -> complex:
        return self.scale * complex(np.trace(a.entries))

    @property
    def kind(self) -> str:
        return "counting" if self.scale == 1.0 else f"scaled:{self.scale:g}"


def counting_trace() -> TraceFunctional:
    return TraceFunctional(1.0)


def scaled_trace(c: float) -> TraceFunctional:
    return TraceFunctional(float(c))


def singular_values(a: MatrixObservable) -> np.ndarray:
    """Singular values sorted decreasingly.

    Hermitian matrices use a direct eigensolve (|a| has eigenvalues
    |lambda_i|, with no conditioning loss); general matrices go through the
    hermitian eigensolve of a* a followed by a square root.  Values below
    1e-12 * s_max are zeroed."""
    if a.hermitian:
        s = np.sort(np.abs(np.linalg.eigvalsh(a.entries)))[::-1]
    else:
        gram = a.entries.conj().T @ a.entries
        evals = np.linalg.eigvalsh(gram)
        s = np.sqrt(np.clip(evals, 0.0, None))[::-1]
    if s.size and s[0] > 0:
        s[s <= _EIG_ZERO_TOL * s[0]] = 0.0
    return s


def singular_profile(a: MatrixObservable, trace: TraceFunctional | None = None) -> DecreasingProfile:
    """Step profile of the generalized singular values: levels are the
    distinct singular values, lengths their trace masses."""
    trace = trace or counting_trace()
    s = singular_values(a)
    steps: list[tuple[float, float]] = []
    for v in s:
        if v == 0.0:
            continue
        if steps and steps[-1][0] == v:
            steps[-1] = (v, steps[-1][1] + trace.scale)
        else:
            steps.append((float(v), trace.scale))
    return DecreasingProfile(tuple(steps), ZeroTail())


def kunze_modular(
    young: YoungFunction,
    a: MatrixObservable,
    trace: TraceFunctional | None = None,
    lam: float = 1.0,
) -> float:
    """tau(Psi(|a| / lam)) by spectral functional calculus."""
    if not (lam > 0 and math.isfinite(lam)):
        raise DomainError("scale lambda must be positive and finite")
    trace = trace or counting_trace()
    s = singular_values(a)
    vals = young.eval(s / lam) if s.size else np.zeros(0)
    return float(trace.scale * np.sum(vals))


def nc_norm(
    young: YoungFunction, a: MatrixObservable, trace: TraceFunctional | None = None
) -> NormReport:
    """Noncommutative Luxemburg norm: the classical Luxemburg norm of the
    singular-value profile."""
    return luxemburg_norm(young, singular_profile(a, trace))


@dataclass(frozen=True)
class AdmissibilityRecord:
    """Witness data for E = (0, upper]: its weighted measure, the weighted
    norm of its indicator, and the Hoelder pairing constant C_E."""

    upper: float
    nu: float
    indicator_norm: float
    c_e: float


@dataclass(frozen=True)
class WeightedQuantumSpace:
    """A Young function together with an integrable weight profile mu_t(x)
    and the admissibility record for the canonical sets (0, k]."""

    young: YoungFunction
    weight: DecreasingProfile
    admissibility: tuple[AdmissibilityRecord, ...]

    @classmethod
    def build(
        cls,
        young: YoungFunction,
        weight,
        trace: TraceFunctional | None = None,
        k_max: int = 8,
    ) -> "WeightedQuantumSpace":
        wprof = weight if isinstance(weight, DecreasingProfile) else singular_profile(weight, trace)
        if math.isinf(hl_partial(wprof, math.inf)):
            raise DomainError("the weight profile must be integrable (x in L^1_+)")
        comp = complement(young)
        records = []
        for k in range(1, k_max + 1):
            nu = hl_partial(wprof, float(k))
            chi = DecreasingProfile(((1.0, float(k)),))
            ind = luxemburg_norm(young, chi, wprof).value
            ce = orlicz_norm(comp, chi, wprof).value
            records.append(AdmissibilityRecord(float(k), nu, ind, ce))
        return cls(young, wprof, tuple(records))

    @property
    def admissible(self) -> bool:
        return all(
            math.isfinite(r.nu) and math.isfinite(r.indicator_norm) and math.isfinite(r.c_e)
            for r in self.admissibility
        )


def weighted_nc_norm(space: WeightedQuantumSpace, g) -> NormReport:
    """Luxemburg norm of mu(g) against the weight mu_t(x) dt."""
    gprof = g if isinstance(g, DecreasingProfile) else singular_profile(g)
    return luxemburg_norm(space.young, gprof, space.weight)


@dataclass(frozen=True)
class QuantumRegularityReport:
    regular: bool
    domain: DomainInterval


def _as_profile(g) -> DecreasingProfile:
    return g if isinstance(g, DecreasingProfile) else singular_profile(g)


def quantum_regular_check(g, x_weight: DecreasingProfile) -> QuantumRegularityReport:
    """Interval of t with integral exp(t mu_s(g)) mu_s(x) ds < inf, reported
    one-sided (mu_s(g) >= 0); regular iff 0 lies in the open interior."""
    gprof = _as_profile(g)
    if math.isinf(hl_partial(x_weight, math.inf)):
        raise DomainError("the weight profile must be integrable")
    front = gprof.front
    theta_w = _WeightView(x_weight).inv_order
    if front is None:
        dom = DomainInterval(-math.inf, math.inf)
    elif isinstance(front, LogSingularity):
        upper = max((1.0 - theta_w) / front.coeff, 0.0)
        if upper > 0:
            dom = DomainInterval(-math.inf, upper)
        else:
            dom = DomainInterval(-math.inf, 0.0, upper_closed=True)
    else:
        assert isinstance(front, InvPowerSingularity)
        dom = DomainInterval(-math.inf, 0.0, upper_closed=True)
    return QuantumRegularityReport(dom.contains_zero_in_interior, dom)


@dataclass(frozen=True)
class QPSCrossCheck:
    agrees: bool
    regular: bool
    member: bool
    membership: MembershipReport


def quantum_pistone_sempi_crosscheck(g, x_weight: DecreasingProfile) -> QPSCrossCheck:
    """Regularity of the moment transform versus membership in the weighted
    cosh-1 space; the two verdicts must coincide."""
    gprof = _as_profile(g)
    reg = quantum_regular_check(gprof, x_weight)
    mem = membership(cosh_minus_1(), gprof, x_weight)
    return QPSCrossCheck(reg.regular == mem.member, reg.regular, mem.member, mem)


def nc_entropy(
    f: MatrixObservable, trace: TraceFunctional | None = None, eps: float = 0.0
) -> float:
    """tau(f log(f + eps)) for positive semidefinite f; eps = 0 uses the
    0 * log(0) = 0 convention on the kernel."""
    trace = trace or counting_trace()
    if eps < 0:
        raise DomainError("eps must be >= 0")
    arr = f.entries
    scale = float(np.max(np.abs(arr))) or 1.0
    if float(np.max(np.abs(arr - arr.conj().T))) > _HERMITIAN_TOL * scale:
        raise DomainError("entropy requires a hermitian matrix")
    evals = np.linalg.eigvalsh(arr)
    if np.min(evals) < -1e-12 * max(scale, 1.0):
        raise DomainError("entropy requires a positive semidefinite matrix")
    lam = np.clip(evals, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(lam + eps > 0, lam * np.log(np.maximum(lam + eps, 1e-320)), 0.0)
    return float(trace.scale * np.sum(terms))

"""Certificates for variation-bounding observability operators.

The observability operator of (A, c) maps an initial state to the output
sequence (c A^t x0).  Its strict/non-strict variation-bounding,
variation-diminishing and k-positivity properties reduce to external
positivity of a family of compound LTI systems: the impulse response of the
(k, r, beta) system enumerates, over t, the minors

    det(O[alpha, beta]),  alpha = {1..k-r} U (k-r+t : k+t-1),

of the stacked observability matrix O.  Certifying the family therefore
certifies the operator.  Controllability certificates run the same pipeline
on the transposed pair, and a Hankel operator inherits a sufficient
certificate from its two factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    Backend,
    IndexTuple,
    LinalgError,
    Matrix,
    Num,
    RankOutOfRangeError,
    compound,
    inverse,
    lex_tuples,
    minor,
    rank,
    sign_of,
)
from .lti import (
    ExtPosStatus,
    ExtPosVerdict,
    LtiSystem,
    OrderedSpectrum,
    default_horizon,
    dominant_tail,
    eigen_sorted,
    external_positivity,
    impulse_response,
    observability_matrix,
)
from .variation import v_minus


class NotObservableError(LinalgError):
    pass


class BadIndicesError(LinalgError):
    pass


@dataclass(frozen=True)
class CompoundSystem:
    """LTI system whose impulse response traces a structured minor family."""

    system: LtiSystem
    r: int
    k: int
    beta: IndexTuple | None  # None for the full-order family
    relaxed: bool = False    # non-strict external positivity may suffice

    def label(self) -> str:
        beta = str(self.beta) if self.beta is not None else "-"
        return f"(r={self.r}, beta={beta})"


class _OperatorContext:
    """Shared pieces for one observable pair (A, c): O_n, its inverse, and
    the compounds of A and of the leading observability blocks."""

    def __init__(self, A: Matrix, c: Sequence[Num], tol: float = DEFAULT_TOL):
        if not A.is_square():
            raise LinalgError("state matrix must be square")
        self.A = A
        self.c = tuple(c)
        self.n = A.rows
        self.tol = tol
        self.obs_n = observability_matrix(A, c, self.n)
        if rank(self.obs_n, tol) < self.n:
            raise NotObservableError(
                f"observability matrix has rank {rank(self.obs_n, tol)} < {self.n}")
        self.obs_n_inv = inverse(self.obs_n, tol)
        self._a_r = {}
        self._c_r = {}
        self._a_pow = {0: Matrix.identity(self.n, A.backend)}

    def a_compound(self, r: int) -> Matrix:
        if r not in self._a_r:
            self._a_r[r] = compound(self.A, r)
        return self._a_r[r]

    def c_compound(self, r: int) -> tuple[Num, ...]:
        if r not in self._c_r:
            obs_r = observability_matrix(self.A, self.c, r)
            self._c_r[r] = compound(obs_r, r).row(0)
        return self._c_r[r]

    def a_power(self, p: int) -> Matrix:
        if p not in self._a_pow:
            self._a_pow[p] = self.A @ self.a_power(p - 1)
        return self._a_pow[p]


def _full_order_input(ctx: _OperatorContext, r: int) -> tuple[Num, ...]:
    # r-th compound of the last r columns of A^(n-r) O_n^{-1}; a column vector
    n = ctx.n
    tall = (ctx.a_power(n - r) @ ctx.obs_n_inv).submatrix(
        range(1, n + 1), range(n - r + 1, n + 1))
    return compound(tall, r).col(0)


def full_compound_systems(A: Matrix, c: Sequence[Num],
                          tol: float = DEFAULT_TOL) -> list[CompoundSystem]:
    """The n systems certifying the full-order (k = n) case.

    Their impulse responses are the full-width anchored minors of the stacked
    observability matrix scaled by 1/det(O_n), so the required sign is
    positive for every r.
    """
    ctx = _OperatorContext(A, c, tol)
    out = []
    for r in range(1, ctx.n + 1):
        sys = LtiSystem(ctx.a_compound(r), _full_order_input(ctx, r), ctx.c_compound(r))
        out.append(CompoundSystem(sys, r, ctx.n, None))
    return out


def _minor_trace_input(ctx: _OperatorContext, k: int, r: int, beta: IndexTuple) -> tuple[Num, ...]:
    """Input vector of the (k, r, beta) system, assembled by subset indexing.

    The driving identity pairs each lexicographic k-subset S of the rows with
    the coordinate det(O_n[S, beta]); a coordinate contributes only when S
    contains the anchor 1..k-r, with the remaining r-subset of S selecting
    columns of A^(k-r) O_n^{-1}.  Subset membership rather than positional
    zero-padding keeps the pairing immune to ordering mistakes.
    """
    n = ctx.n
    left = ctx.a_power(k - r) @ ctx.obs_n_inv
    anchor = frozenset(range(1, k - r + 1))
    coords = []
    for S in lex_tuples(n, k):
        if anchor <= set(S.elems):
            cols = tuple(sorted(set(S.elems) - anchor))
            coords.append((cols, minor(ctx.obs_n, S, beta)))
    b = []
    for q in lex_tuples(n, r):
        total = None
        for cols, weight in coords:
            term = minor(left, q, cols) * weight
            total = term if total is None else total + term
        b.append(total)
    return tuple(b)


def compound_system(A: Matrix, c: Sequence[Num], k: int, r: int, beta,
                    tol: float = DEFAULT_TOL, _ctx: _OperatorContext | None = None) -> CompoundSystem:
    """Build the (k, r, beta) compound system for an observable pair (A, c)."""
    ctx = _ctx if _ctx is not None else _OperatorContext(A, c, tol)
    n = ctx.n
    if not (1 <= r <= k <= n):
        raise RankOutOfRangeError(f"need 1 <= r <= k <= n, got r={r}, k={k}, n={n}")
    if not isinstance(beta, IndexTuple):
        beta = IndexTuple(n, tuple(beta))
    if beta.n != n or len(beta) != k:
        raise BadIndicesError(f"beta must be a k-subset of 1..{n}, got {beta}")
    sys = LtiSystem(ctx.a_compound(r), _minor_trace_input(ctx, k, r, beta), ctx.c_compound(r))
    return CompoundSystem(sys, r, k, beta)


@dataclass(frozen=True)
class BetaEntry:
    beta: IndexTuple
    relaxed: bool  # non-strict sign allowed on the r = k system for this beta


def beta_family(n: int, k: int, strict: bool = True) -> list[BetaEntry]:
    """Column index family: sets {1..k-r} U (t : t+r-1), deduplicated.

    In non-strict mode, the fully consecutive sets starting beyond k are the
    ones whose r = k systems may be non-strictly signed.
    """
    if not 1 <= k <= n:
        raise RankOutOfRangeError(f"need 1 <= k <= n, got k={k}, n={n}")
    from .signcons import _anchored_tuples, _is_consecutive_tail

    out = []
    for beta in _anchored_tuples(n, k):
        relaxed = (not strict) and _is_consecutive_tail(beta, k)
        out.append(BetaEntry(beta, relaxed))
    return out


class Conclusion(Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


@dataclass
class SystemVerdict:
    r: int
    k: int
    beta: IndexTuple | None
    relaxed: bool
    verdict: ExtPosVerdict


@dataclass
class Certificate:
    """Outcome of an operator certification run."""

    property_name: str
    target: str
    conclusion: Conclusion
    common_sign: int | None
    per_system: list[SystemVerdict]
    horizon: int
    notes: list[str] = field(default_factory=list)

    def passed(self) -> bool:
        return self.conclusion is Conclusion.CERTIFIED


def _sorted_systems(systems: list[CompoundSystem]) -> list[CompoundSystem]:
    return sorted(systems, key=lambda s: (s.r, s.beta.lex_rank() if s.beta else 0))


def certify_svb(A: Matrix, c: Sequence[Num], k: int, horizon: int | None = None,
                tol: float = DEFAULT_TOL, target: str = "observability") -> Certificate:
    """Certify that the observability operator of (A, c) is strictly
    (k-1)-variation bounding.

    Every family system must be strictly externally positive or negative with
    one common sign; for k = n the sign is forced positive.  A decisive
    wrong-signed or zero minor refutes.
    """
    n = A.rows
    if not 1 <= k <= n:
        raise RankOutOfRangeError(f"need 1 <= k <= n, got k={k}, n={n}")
    horizon = horizon if horizon is not None else default_horizon(n)
    name = f"SVB_{k - 1}"
    notes = []
    if k == n:
        systems = full_compound_systems(A, c, tol)
        forced_sign = 1
        notes.append("full-order family; sign forced positive")
    else:
        ctx = _OperatorContext(A, c, tol)
        systems = _sorted_systems([
            compound_system(A, c, k, r, entry.beta, tol, _ctx=ctx)
            for r in range(1, k + 1)
            for entry in beta_family(n, k, strict=True)
        ])
        forced_sign = None

    per = []
    eps = forced_sign
    signs_seen = set()
    refuted = None
    inconclusive = None
    for cs in systems:
        v = external_positivity(cs.system, strict=True, horizon=horizon, tol=tol)
        per.append(SystemVerdict(cs.r, cs.k, cs.beta, cs.relaxed, v))
        if v.sample_sign is not None:
            signs_seen.add(v.sample_sign)
        if v.status is ExtPosStatus.VIOLATED:
            # a mixed trace or a zero minor falsifies strict sign consistency
            refuted = refuted or f"system {cs.label()} violated at t={v.first_violation[0]}"
            continue
        if v.status in (ExtPosStatus.STRICT_POSITIVE, ExtPosStatus.STRICT_NEGATIVE):
            if eps is None:
                eps = 1 if v.status is ExtPosStatus.STRICT_POSITIVE else -1
            continue
        inconclusive = inconclusive or (
            f"system {cs.label()}: {v.status.value}" + (f" ({v.notes[-1]})" if v.notes else ""))

    # decisive samples of opposite signs are hard witnesses even when some
    # trace lacks a tail certificate
    if forced_sign is not None:
        conflict = signs_seen - {forced_sign}
    else:
        conflict = signs_seen if len(signs_seen) > 1 else set()
    if conflict:
        refuted = refuted or (
            f"family carries opposite strict signs {sorted(signs_seen)}"
            if forced_sign is None
            else f"family sign is forced positive but a trace is decisively negative")
    if refuted:
        notes.append(refuted)
        return Certificate(name, target, Conclusion.REFUTED, None, per, horizon, notes)
    if inconclusive:
        notes.append(inconclusive)
        return Certificate(name, target, Conclusion.INCONCLUSIVE, eps, per, horizon, notes)
    return Certificate(name, target, Conclusion.CERTIFIED, eps, per, horizon, notes)


def _first_samples_strict(v: ExtPosVerdict, count: int, eps: int,
                          backend: Backend, tol: float) -> bool:
    if len(v.samples) < count:
        return False
    return all(sign_of(x, backend, tol) == eps for x in v.samples[:count])


def certify_vb(A: Matrix, c: Sequence[Num], k: int, horizon: int | None = None,
               tol: float = DEFAULT_TOL, target: str = "observability") -> Certificate:
    """Sufficient certificate that the observability operator is
    (k-1)-variation bounding (non-strict).

    Relaxed family members (fully consecutive column sets beyond k, traced by
    the r = k systems) may be non-strictly signed provided their first k
    samples carry the family sign strictly.  This route never refutes.
    """
    n = A.rows
    if not 1 <= k <= n:
        raise RankOutOfRangeError(f"need 1 <= k <= n, got k={k}, n={n}")
    horizon = horizon if horizon is not None else default_horizon(n)
    name = f"VB_{k - 1}"
    backend = A.backend
    notes = []

    if k == n:
        # full-order route: strict for r < n; the r = n system may be
        # non-strict when its first n-1 samples are strictly positive
        systems = full_compound_systems(A, c, tol)
        per = []
        problem = None
        for cs in systems:
            relaxed = cs.r == n
            v = external_positivity(cs.system, strict=not relaxed, horizon=horizon, tol=tol)
            per.append(SystemVerdict(cs.r, cs.k, cs.beta, relaxed, v))
            if not relaxed:
                if v.status is not ExtPosStatus.STRICT_POSITIVE:
                    problem = problem or f"system {cs.label()}: {v.status.value}"
            else:
                if v.status not in (ExtPosStatus.STRICT_POSITIVE, ExtPosStatus.NONNEGATIVE):
                    problem = problem or f"system {cs.label()}: {v.status.value}"
                elif n > 1 and not _first_samples_strict(v, n - 1, 1, backend, tol):
                    problem = problem or (
                        f"system {cs.label()}: first {n - 1} samples not strictly positive")
        if problem:
            notes.append(problem)
            return Certificate(name, target, Conclusion.INCONCLUSIVE, 1, per, horizon, notes)
        return Certificate(name, target, Conclusion.CERTIFIED, 1, per, horizon, notes)

    ctx = _OperatorContext(A, c, tol)
    entries = beta_family(n, k, strict=False)
    systems = _sorted_systems([
        CompoundSystem(
            compound_system(A, c, k, r, entry.beta, tol, _ctx=ctx).system,
            r, k, entry.beta, relaxed=(r == k and entry.relaxed))
        for r in range(1, k + 1)
        for entry in entries
    ])
    per = []
    strict_required = []
    relaxed_list = []
    for cs in systems:
        v = external_positivity(cs.system, strict=not cs.relaxed, horizon=horizon, tol=tol)
        sv = SystemVerdict(cs.r, cs.k, cs.beta, cs.relaxed, v)
        per.append(sv)
        (relaxed_list if cs.relaxed else strict_required).append(sv)

    eps = None
    problem = None
    for sv in strict_required:
        st = sv.verdict.status
        if st in (ExtPosStatus.STRICT_POSITIVE, ExtPosStatus.STRICT_NEGATIVE):
            s = 1 if st is ExtPosStatus.STRICT_POSITIVE else -1
            if eps is None:
                eps = s
            elif s != eps:
                problem = problem or "opposite strict signs inside the family"
        else:
            problem = problem or f"system (r={sv.r}, beta={sv.beta}): {st.value}"
    if eps is None and problem is None:
        problem = "no decisive system to set the family sign"
    for sv in relaxed_list:
        st = sv.verdict.status
        ok_status = {
            1: (ExtPosStatus.STRICT_POSITIVE, ExtPosStatus.NONNEGATIVE),
            -1: (ExtPosStatus.STRICT_NEGATIVE, ExtPosStatus.NONPOSITIVE),
        }.get(eps, ())
        if st not in ok_status:
            problem = problem or f"relaxed system (r={sv.r}, beta={sv.beta}): {st.value}"
        elif not _first_samples_strict(sv.verdict, k, eps, backend, tol):
            # side condition: the first k samples must carry the family sign
            problem = problem or (
                f"relaxed system (r={sv.r}, beta={sv.beta}): first {k} samples not strictly signed")
    if problem:
        notes.append(problem)
        return Certificate(name, target, Conclusion.INCONCLUSIVE, eps, per, horizon, notes)
    return Certificate(name, target, Conclusion.CERTIFIED, eps, per, horizon, notes)


def certify_k_positive(A: Matrix, c: Sequence[Num], k: int, strict: bool = True,
                       horizon: int | None = None, tol: float = DEFAULT_TOL,
                       target: str = "observability") -> Certificate:
    """Certify (strict) k-positivity of the observability operator.

    For each order j <= k the r = j systems trace the consecutive j-row
    minors over the reduced column family; strict positivity is required
    below the top order, and at the top order positivity may be non-strict
    unless ``strict``.  A decisively negative minor refutes; so does a zero
    minor in strict mode.
    """
    n = A.rows
    if not 1 <= k <= n:
        raise RankOutOfRangeError(f"need 1 <= k <= n, got k={k}, n={n}")
    horizon = horizon if horizon is not None else default_horizon(n)
    name = f"{'strictly ' if strict else ''}{k}-positive"
    ctx = _OperatorContext(A, c, tol)
    backend = A.backend
    per = []
    refuted = None
    inconclusive = None
    for j in range(1, k + 1):
        want_strict = strict or j < k
        for entry in beta_family(n, j, strict=True):
            cs = compound_system(A, c, j, j, entry.beta, tol, _ctx=ctx)
            v = external_positivity(cs.system, strict=want_strict, horizon=horizon, tol=tol)
            per.append(SystemVerdict(j, j, entry.beta, not want_strict, v))
            st = v.status
            if v.sample_sign == -1 or st in (ExtPosStatus.STRICT_NEGATIVE,
                                             ExtPosStatus.NONPOSITIVE):
                refuted = refuted or f"order {j} trace {entry.beta} is negative"
            elif st is ExtPosStatus.VIOLATED:
                # a violated trace holds a decisive negative minor, or a zero
                # one under a strict requirement; both refute positivity
                witness = next(
                    ((t, x) for t, x in enumerate(v.samples, 1)
                     if sign_of(x, backend, tol) == -1),
                    v.first_violation)
                refuted = refuted or (
                    f"order {j} minor at t={witness[0]}, beta={entry.beta} equals {witness[1]}")
            elif want_strict and st is not ExtPosStatus.STRICT_POSITIVE:
                inconclusive = inconclusive or f"order {j} trace {entry.beta}: {st.value}"
            elif not want_strict and st not in (ExtPosStatus.STRICT_POSITIVE,
                                                ExtPosStatus.NONNEGATIVE):
                inconclusive = inconclusive or f"order {j} trace {entry.beta}: {st.value}"
    notes = []
    if refuted:
        notes.append(refuted)
        return Certificate(name, target, Conclusion.REFUTED, None, per, horizon, notes)
    if inconclusive:
        notes.append(inconclusive)
        return Certificate(name, target, Conclusion.INCONCLUSIVE, 1, per, horizon, notes)
    notes.append(f"operator is order-preserving variation diminishing of order {k - 1}")
    return Certificate(name, target, Conclusion.CERTIFIED, 1, per, horizon, notes)


def certify_vd(A: Matrix, c: Sequence[Num], k: int, horizon: int | None = None,
               tol: float = DEFAULT_TOL, target: str = "observability") -> Certificate:
    """Certify that the operator is (k-1)-variation diminishing by certifying
    variation bounding at every order j <= k (strictly where possible)."""
    n = A.rows
    if not 1 <= k <= n:
        raise RankOutOfRangeError(f"need 1 <= k <= n, got k={k}, n={n}")
    horizon = horizon if horizon is not None else default_horizon(n)
    name = f"VD_{k - 1}"
    per = []
    notes = []
    all_ok = True
    for j in range(1, k + 1):
        cert = certify_svb(A, c, j, horizon, tol, target)
        if cert.conclusion is not Conclusion.CERTIFIED:
            cert = certify_vb(A, c, j, horizon, tol, target)
        per.extend(cert.per_system)
        if cert.conclusion is Conclusion.CERTIFIED:
            notes.append(f"order {j}: {cert.property_name} certified")
        else:
            all_ok = False
            notes.append(f"order {j}: not certified ({cert.notes[-1] if cert.notes else ''})")
    conclusion = Conclusion.CERTIFIED if all_ok else Conclusion.INCONCLUSIVE
    return Certificate(name, target, conclusion, None, per, horizon, notes)


@dataclass
class EigenScreen:
    """Necessary-condition screen on the spectrum of A.

    A strictly sign-consistent observability operator of a diagonalizable A
    forces the k dominant eigenvalues to be real and positive.  The screen
    also fails when the modulus shell of the k-th eigenvalue contains
    eigenvalues that are not real positive, since the dominant-mode
    positivity of the compound systems is then impossible; with ties or a
    non-diagonalizable A the failure is advisory rather than a refutation.
    """

    passed: bool
    refutes: bool
    diagonalizable: bool
    spectrum: OrderedSpectrum
    reason: str = ""


def eigen_necessary_check(A: Matrix, k: int, tol: float = DEFAULT_TOL,
                          tie_tol: float = 1e-8) -> EigenScreen:
    n = A.rows
    if not 1 <= k <= n:
        raise RankOutOfRangeError(f"need 1 <= k <= n, got k={k}, n={n}")
    spec = eigen_sorted(A, tie_tol)
    lams = spec.eigenvalues
    Af = np.array(A.to_float().data, dtype=float)

    def real_positive(lam: complex) -> bool:
        return abs(lam.imag) <= tol * max(1.0, abs(lam)) and lam.real > tol

    top_ok = all(real_positive(lam) for lam in lams[:k])
    shell_floor = abs(lams[k - 1]) - tie_tol * max(1.0, abs(lams[k - 1]))
    shell = [lam for lam in lams if abs(lam) >= shell_floor]
    shell_ok = all(real_positive(lam) for lam in shell)

    diagonalizable = True
    seen = []
    for lam in lams:
        if any(abs(lam - s) <= tie_tol * max(1.0, abs(s)) for s in seen):
            continue
        seen.append(lam)
        alg = sum(1 for m in lams if abs(m - lam) <= tie_tol * max(1.0, abs(lam)))
        if alg > 1:
            geo = n - np.linalg.matrix_rank(Af - lam * np.eye(n), tol=1e-8)
            if geo < alg:
                diagonalizable = False

    passed = top_ok and shell_ok
    if passed:
        return EigenScreen(True, False, diagonalizable, spec)
    if not top_ok:
        reason = f"a dominant eigenvalue among the top {k} is not real positive"
        return EigenScreen(False, diagonalizable, diagonalizable, spec,
                           reason if diagonalizable else reason + " (advisory: not diagonalizable)")
    reason = ("advisory: the modulus shell of the k-th eigenvalue contains "
              "eigenvalues that are not real positive")
    return EigenScreen(False, False, diagonalizable, spec, reason)


@dataclass
class VariationBoundReport:
    input_variation: int
    certified_levels: dict[int, str]  # level -> "strict" | "nonstrict"
    bound: int | None
    measured: int
    measurement_complete: bool
    horizon: int
    notes: list[str] = field(default_factory=list)


def impulse_variation_bound(A: Matrix, b: Sequence[Num], c: Sequence[Num],
                            horizon: int | None = None,
                            tol: float = DEFAULT_TOL) -> VariationBoundReport:
    """Bound the sign changes of the impulse response g = c A^(t-1) b.

    A certified level L (the operator bounds variation at L) applies when
    the input direction b has at most L sign changes; the report also
    measures the variation of the sampled response, with a completeness flag
    from the dominant-mode tail (no further sign changes can occur once the
    tail bound holds).
    """
    n = A.rows
    horizon = horizon if horizon is not None else default_horizon(n)
    vb_in = v_minus(b)
    levels = {}
    for k in range(1, n + 1):
        cert = certify_svb(A, c, k, horizon, tol)
        if cert.conclusion is Conclusion.CERTIFIED:
            levels[k - 1] = "strict"
            continue
        cert = certify_vb(A, c, k, horizon, tol)
        if cert.conclusion is Conclusion.CERTIFIED:
            levels[k - 1] = "nonstrict"
    applicable = [level for level in levels if level >= vb_in]
    bound = min(applicable) if applicable else None
    sys = LtiSystem(A, tuple(b), tuple(c))
    g = impulse_response(sys, horizon)
    measured = v_minus(g, tol if A.backend is Backend.FLOAT else None)
    tail, _ = dominant_tail(sys, tol)
    complete = tail is not None and tail.start <= horizon
    notes = []
    if bound is None:
        notes.append("no certified level covers the input variation")
    return VariationBoundReport(vb_in, levels, bound, measured, complete, horizon, notes)


_CERTIFIERS = {
    "svb": certify_svb,
    "vb": certify_vb,
    "vd": certify_vd,
}


def certify_observability(A: Matrix, c: Sequence[Num], k: int, prop: str = "svb",
                          horizon: int | None = None, tol: float = DEFAULT_TOL,
                          strict: bool = True) -> Certificate:
    if prop == "kpos":
        return certify_k_positive(A, c, k, strict, horizon, tol)
    return _CERTIFIERS[prop](A, c, k, horizon, tol)


def certify_controllability(A: Matrix, b: Sequence[Num], k: int, prop: str = "svb",
                            horizon: int | None = None, tol: float = DEFAULT_TOL,
                            strict: bool = True) -> Certificate:
    """Controllability certificates via the transposed pair (A^T, b^T)."""
    if prop == "kpos":
        cert = certify_k_positive(A.transpose(), b, k, strict, horizon, tol,
                                  target="controllability")
    else:
        cert = _CERTIFIERS[prop](A.transpose(), b, k, horizon, tol, target="controllability")
    return cert


@dataclass
class HankelCertificate:
    """Sufficient Hankel-operator certificate from its two factors.

    The Hankel operator factors through the controllability and observability
    operators, so bounded variation of both factors bounds the composition.
    This is sufficiency only; nothing is refuted through this route.
    """

    property_name: str
    conclusion: Conclusion
    observability: Certificate
    controllability: Certificate
    notes: list[str] = field(default_factory=list)

    def passed(self) -> bool:
        return self.conclusion is Conclusion.CERTIFIED


def certify_hankel(A: Matrix, b: Sequence[Num], c: Sequence[Num], k: int,
                   prop: str = "svb", horizon: int | None = None,
                   tol: float = DEFAULT_TOL, strict: bool = True) -> HankelCertificate:
    obs_cert = certify_observability(A, c, k, prop, horizon, tol, strict)
    ctr_cert = certify_controllability(A, b, k, prop, horizon, tol, strict)
    both = obs_cert.passed() and ctr_cert.passed()
    conclusion = Conclusion.CERTIFIED if both else Conclusion.INCONCLUSIVE
    notes = [
        f"observability factor: {obs_cert.conclusion.value}",
        f"controllability factor: {ctr_cert.conclusion.value}",
    ]
    if both:
        notes.append("both factors certified; the Hankel operator inherits the bound")
    return HankelCertificate(obs_cert.property_name, conclusion, obs_cert, ctr_cert, notes)

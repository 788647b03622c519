"""Recognition of sign-consistent / sign-regular / totally positive matrices.

Implements the full-compound reference checks, the polynomial-size reduced
minor families (strict and non-strict variants), consecutive and initial
minor certificates, the tail-block transform whose minors enumerate the
full-width minors of a tall matrix, and decision procedures for
variation-bounding (VB) and variation-diminishing (VD) matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .linalg import (
    DEFAULT_TOL,
    Backend,
    IndexTuple,
    LinalgError,
    Matrix,
    Num,
    RankOutOfRangeError,
    SingularMatrixError,
    compound,
    inverse,
    lex_tuples,
    minor,
    rank,
    sign_of,
)


class SignVerdict(Enum):
    STRICTLY_POSITIVE = "strictly positive"
    STRICTLY_NEGATIVE = "strictly negative"
    NONNEGATIVE = "nonnegative"
    NONPOSITIVE = "nonpositive"
    ZERO = "zero"
    MIXED = "mixed"
    INCONCLUSIVE = "inconclusive"


_STRICT_OK = {SignVerdict.STRICTLY_POSITIVE, SignVerdict.STRICTLY_NEGATIVE}
_NONSTRICT_OK = _STRICT_OK | {
    SignVerdict.NONNEGATIVE,
    SignVerdict.NONPOSITIVE,
    SignVerdict.ZERO,
}


@dataclass
class SignSummary:
    """Aggregate sign classification of a family of values."""

    verdict: SignVerdict
    epsilon: int | None
    positives: int = 0
    negatives: int = 0
    zeros: int = 0
    unknowns: int = 0
    witness: tuple = ()  # first (label, value) per conflicting class, for audit

    def passes(self, strict: bool) -> bool:
        return self.verdict in (_STRICT_OK if strict else _NONSTRICT_OK)


def classify_family(labeled_values, backend: Backend, tol: float = DEFAULT_TOL) -> SignSummary:
    """Classify a family of (label, value) pairs into one SignVerdict."""
    pos = neg = zero = unk = 0
    first = {}
    for label, value in labeled_values:
        s = sign_of(value, backend, tol)
        if s == 1:
            pos += 1
            first.setdefault("pos", (label, value))
        elif s == -1:
            neg += 1
            first.setdefault("neg", (label, value))
        elif s == 0:
            zero += 1
            first.setdefault("zero", (label, value))
        else:
            unk += 1
            first.setdefault("unk", (label, value))
    if pos and neg:
        verdict, eps = SignVerdict.MIXED, None
        witness = (first["pos"], first["neg"])
    elif unk:
        verdict, eps = SignVerdict.INCONCLUSIVE, None
        witness = (first["unk"],)
    elif pos and zero:
        verdict, eps, witness = SignVerdict.NONNEGATIVE, 1, (first["zero"],)
    elif neg and zero:
        verdict, eps, witness = SignVerdict.NONPOSITIVE, -1, (first["zero"],)
    elif pos:
        verdict, eps, witness = SignVerdict.STRICTLY_POSITIVE, 1, ()
    elif neg:
        verdict, eps, witness = SignVerdict.STRICTLY_NEGATIVE, -1, ()
    else:
        verdict, eps, witness = SignVerdict.ZERO, None, ()
    return SignSummary(verdict, eps, pos, neg, zero, unk, witness)


def sign_consistent(X: Matrix, k: int, tol: float = DEFAULT_TOL) -> SignSummary:
    """Reference check: classify every entry of the k-th compound of X."""
    C = compound(X, k)
    labels = [
        ((I.elems, J.elems), C[i, j])
        for i, I in enumerate(lex_tuples(X.rows, k))
        for j, J in enumerate(lex_tuples(X.cols, k))
    ]
    return classify_family(labels, X.backend, tol)


@dataclass
class OrderedVerdicts:
    """Per-order sign verdicts for orders 1..k plus an overall pass flag."""

    orders: dict[int, SignSummary]
    strict: bool
    passed: bool


def sign_regular(X: Matrix, k: int, strict: bool, tol: float = DEFAULT_TOL) -> OrderedVerdicts:
    """Sign consistency of every order j in 1..k (signs may differ per order)."""
    orders = {j: sign_consistent(X, j, tol) for j in range(1, k + 1)}
    passed = all(s.passes(strict) for s in orders.values())
    return OrderedVerdicts(orders, strict, passed)


def k_positive(X: Matrix, k: int, strict: bool, tol: float = DEFAULT_TOL) -> OrderedVerdicts:
    """All minors of order <= k nonnegative (positive when strict)."""
    orders = {j: sign_consistent(X, j, tol) for j in range(1, k + 1)}
    if strict:
        passed = all(s.verdict is SignVerdict.STRICTLY_POSITIVE for s in orders.values())
    else:
        passed = all(
            s.verdict in (SignVerdict.STRICTLY_POSITIVE, SignVerdict.NONNEGATIVE, SignVerdict.ZERO)
            for s in orders.values()
        )
    return OrderedVerdicts(orders, strict, passed)


@dataclass
class CertificateResult:
    passed: bool
    conclusion: str
    witness: tuple = ()


def _consecutive_minors(X: Matrix, r: int):
    for i in range(1, X.rows - r + 2):
        rows = tuple(range(i, i + r))
        for j in range(1, X.cols - r + 2):
            yield (rows, tuple(range(j, j + r))), minor(X, rows, tuple(range(j, j + r)))


def consecutive_certificate(X: Matrix, k: int, strict_top: bool = True,
                            tol: float = DEFAULT_TOL) -> CertificateResult:
    """Consecutive-minor certificate for (strict) total positivity up to order k.

    Orders 1..k-1 must have strictly positive consecutive minors; order k
    nonnegative, or positive when ``strict_top``.  Passing certifies that X
    is (strictly) k-positive.
    """
    if not 1 <= k <= min(X.rows, X.cols):
        raise RankOutOfRangeError(f"order {k} invalid for shape {X.shape}")
    for r in range(1, k + 1):
        summary = classify_family(_consecutive_minors(X, r), X.backend, tol)
        want_strict = strict_top or r < k
        ok = (
            summary.verdict is SignVerdict.STRICTLY_POSITIVE
            if want_strict
            else summary.verdict
            in (SignVerdict.STRICTLY_POSITIVE, SignVerdict.NONNEGATIVE, SignVerdict.ZERO)
        )
        if not ok:
            return CertificateResult(
                False,
                f"consecutive {r}-minors are not {'positive' if want_strict else 'nonnegative'}",
                summary.witness,
            )
    qualifier = "strictly " if strict_top else ""
    return CertificateResult(True, f"{qualifier}{k}-positive via consecutive minors")


def _initial_minors(X: Matrix, r: int):
    rows = tuple(range(1, r + 1))
    for j in range(1, X.cols - r + 2):  # row-initial: rows 1..r, consecutive cols
        cols = tuple(range(j, j + r))
        yield (rows, cols), minor(X, rows, cols)
    cols = tuple(range(1, r + 1))
    for i in range(2, X.rows - r + 2):  # column-initial; i=1 already emitted above
        rws = tuple(range(i, i + r))
        yield (rws, cols), minor(X, rws, cols)


def initial_minor_certificate(X: Matrix, strict_top: bool = True,
                              tol: float = DEFAULT_TOL) -> CertificateResult:
    """Row/column initial-minor certificate for (strict) total positivity.

    Strict mode: every initial minor positive, which is equivalent to strict
    total positivity.  Non-strict mode: initial minors of the top order
    min(rows, cols) may be nonnegative; the matrix is then totally positive
    with all lower-order minors positive.
    """
    top = min(X.rows, X.cols)
    for r in range(1, top + 1):
        summary = classify_family(_initial_minors(X, r), X.backend, tol)
        want_strict = strict_top or r < top
        ok = (
            summary.verdict is SignVerdict.STRICTLY_POSITIVE
            if want_strict
            else summary.verdict
            in (SignVerdict.STRICTLY_POSITIVE, SignVerdict.NONNEGATIVE, SignVerdict.ZERO)
        )
        if not ok:
            return CertificateResult(
                False,
                f"initial {r}-minors are not {'positive' if want_strict else 'nonnegative'}",
                summary.witness,
            )
    conclusion = "strictly totally positive" if strict_top else "totally positive"
    return CertificateResult(True, conclusion)


class SingularLeadingBlockError(LinalgError):
    pass


class PreconditionError(LinalgError):
    pass


@dataclass
class TailBlockTransform:
    """Transform whose minors enumerate the full-width minors of a tall matrix.

    For X with n rows and m < n columns and nonsingular leading m x m block H,
    ``matrix`` is the (n-m) x m matrix C = X[(m+1:n), (1:m)] * H^{-1} * K with
    K the signed antidiagonal.  Every full-width minor det(X[gamma, (1:m)])
    with gamma != (1:m) equals ``head_det`` times a unique minor of C (so the
    signs agree up to ``sign`` = sign(head_det)); the index map is
    :meth:`gamma_for`.
    """

    matrix: Matrix
    sign: int
    head_det: Num
    n: int
    m: int

    def gamma_for(self, alpha: IndexTuple, beta: IndexTuple) -> IndexTuple:
        """Row set of X matched to the C-minor with rows alpha, columns beta."""
        r = len(alpha)
        if len(beta) != r:
            raise RankOutOfRangeError("alpha and beta must have equal length")
        comp = beta.complement().elems  # m - r elements
        gamma = [0] * self.m
        for j in range(1, self.m - r + 1):
            gamma[self.m - r - j] = self.m + 1 - comp[j - 1]
        for i in range(1, r + 1):
            gamma[self.m - r + i - 1] = self.m + alpha.elems[i - 1]
        return IndexTuple(self.n, tuple(gamma))

    def pairs(self):
        """All (r, alpha, beta, gamma) quadruples of the bijection."""
        for r in range(1, min(self.m, self.n - self.m) + 1):
            for alpha in lex_tuples(self.n - self.m, r):
                for beta in lex_tuples(self.m, r):
                    yield r, alpha, beta, self.gamma_for(alpha, beta)


def pena_transform(X: Matrix) -> TailBlockTransform:
    """Build the tail-block transform of a tall matrix (n rows > m columns)."""
    n, m = X.rows, X.cols
    if n <= m:
        raise PreconditionError(f"need more rows than columns, got {X.shape}")
    head = X.submatrix(range(1, m + 1), range(1, m + 1))
    d = minor(X, tuple(range(1, m + 1)), tuple(range(1, m + 1)))
    s = sign_of(d, X.backend, DEFAULT_TOL)
    if s in (0, None):
        raise SingularLeadingBlockError("leading block is singular (or inside tolerance)")
    tail = X.submatrix(range(m + 1, n + 1), range(1, m + 1))
    zero = Fraction(0) if X.backend is Backend.EXACT else 0.0
    K = [[zero] * m for _ in range(m)]
    for j in range(1, m + 1):  # antidiagonal i + j = m + 1, sign (-1)^(j-1)
        val = (-1) ** (j - 1)
        K[m - j][j - 1] = Fraction(val) if X.backend is Backend.EXACT else float(val)
    try:
        head_inv = inverse(head)
    except SingularMatrixError as exc:
        raise SingularLeadingBlockError(str(exc)) from exc
    C = tail @ head_inv @ Matrix(K, X.backend)
    return TailBlockTransform(C, s, d, n, m)


@dataclass(frozen=True)
class FamilyPair:
    alpha: IndexTuple
    beta: IndexTuple
    strict_required: bool = True


def _anchored_tuples(n: int, k: int) -> list[IndexTuple]:
    """Index sets {1..k-r} U (t : t+r-1) for r in 1..k, t in k-r+1..n-r+1, deduplicated.

    The consecutive block starts after the anchor block, so no tuple has a
    repeated index; the leading principal set (1:k) arises once for every r
    and is kept once.
    """
    seen = set()
    out = []
    for r in range(1, k + 1):
        anchor = tuple(range(1, k - r + 1))
        for t in range(k - r + 1, n - r + 2):
            elems = anchor + tuple(range(t, t + r))
            if elems not in seen:
                seen.add(elems)
                out.append(IndexTuple(n, elems))
    return out


def _is_consecutive_tail(idx: IndexTuple, k: int) -> bool:
    return idx.is_consecutive() and idx.elems[0] >= k + 1


def reduced_family(n: int, m: int, k: int, strict: bool = True) -> list[FamilyPair]:
    """Reduced (alpha, beta) minor family certifying k-sign consistency.

    Strict mode: the family is exact (same strict sign across it is
    equivalent to strict k-sign consistency).  Non-strict mode is a
    sufficient certificate and requires n >= 2m when k = m, or 2k <= m when
    k < m; exactly the pairs in which both index sets are fully consecutive
    blocks starting beyond k are allowed a non-strict sign (for k = m the
    single column set (1:m) plays that role on the beta side).
    """
    if not (n > m >= k >= 1):
        raise PreconditionError(f"need n > m >= k >= 1, got n={n}, m={m}, k={k}")
    if not strict:
        if k == m and n < 2 * m:
            raise PreconditionError(f"non-strict full-width family needs n >= 2m, got n={n}, m={m}")
        if k < m and 2 * k > m:
            raise PreconditionError(f"non-strict reduced family needs 2k <= m, got k={k}, m={m}")
    alphas = _anchored_tuples(n, k)
    betas = _anchored_tuples(m, k)
    pairs = []
    for alpha in alphas:
        for beta in betas:
            if strict:
                relaxed = False
            else:
                beta_tail = _is_consecutive_tail(beta, k) or k == m
                relaxed = _is_consecutive_tail(alpha, k) and beta_tail
            pairs.append(FamilyPair(alpha, beta, strict_required=not relaxed))
    return pairs


@dataclass
class ReducedCheckResult:
    verdict: SignVerdict
    epsilon: int | None
    certified: bool
    pairs_checked: int
    witness: tuple = ()


def reduced_check(X: Matrix, k: int, strict: bool = True,
                  tol: float = DEFAULT_TOL) -> ReducedCheckResult:
    """Evaluate only the reduced family minors of X.

    Strict mode is equivalent to strict k-sign consistency; non-strict mode
    is sufficient for k-sign consistency.  ``certified`` states whether the
    family requirements hold (strict pairs one strict sign, relaxed pairs
    compatible); ``verdict`` describes the observed value family.
    """
    family = reduced_family(X.rows, X.cols, k, strict)
    strict_vals, free_vals = [], []
    for pair in family:
        label = (pair.alpha.elems, pair.beta.elems)
        value = minor(X, pair.alpha, pair.beta)
        (strict_vals if pair.strict_required else free_vals).append((label, value))
    base = classify_family(strict_vals, X.backend, tol)
    if base.verdict not in _STRICT_OK:
        # strict-required pairs must carry one strict sign in both modes
        return ReducedCheckResult(base.verdict, base.epsilon, False, len(family), base.witness)
    eps = base.epsilon
    if not free_vals:
        return ReducedCheckResult(base.verdict, eps, True, len(family))
    relaxed = classify_family(free_vals, X.backend, tol)
    if relaxed.verdict is SignVerdict.INCONCLUSIVE:
        return ReducedCheckResult(
            SignVerdict.INCONCLUSIVE, None, False, len(family), relaxed.witness)
    signs_seen = {1} if relaxed.positives else set()
    if relaxed.negatives:
        signs_seen.add(-1)
    if signs_seen - {eps}:
        # a relaxed-pair minor of strictly opposite sign breaks the family
        return ReducedCheckResult(SignVerdict.MIXED, None, False, len(family), relaxed.witness)
    if relaxed.zeros:
        verdict = SignVerdict.NONNEGATIVE if eps == 1 else SignVerdict.NONPOSITIVE
        return ReducedCheckResult(verdict, eps, True, len(family), relaxed.witness)
    return ReducedCheckResult(base.verdict, eps, True, len(family))


class CheckStatus(Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    UNDECIDABLE = "undecidable"


@dataclass
class MatrixPropertyCheck:
    property_name: str
    status: CheckStatus
    rule: str
    detail: str = ""
    strict: bool = False  # True when the strict variant was established


def _all_k_columns_independent(X: Matrix, k: int, tol: float) -> bool:
    """Every k-column subset has rank k; checked exhaustively at desk scale."""
    C = compound(X, k)
    for j in range(C.cols):
        col = C.col(j)
        if all(sign_of(v, X.backend, tol) in (0, None) for v in col):
            return False
    for J in lex_tuples(X.cols, k):
        if rank(X.submatrix(range(1, X.rows + 1), J), tol) != k:
            return False
    return True


def vb_matrix_check(X: Matrix, k: int, tol: float = DEFAULT_TOL) -> MatrixPropertyCheck:
    """Decide whether X is (k-1)-variation bounding, when a characterization applies.

    Decision paths: full-width sign consistency when k equals the column
    count; a column-wise sign test on the k-th compound when rank(X) = k;
    sign consistency when k < rank(X) and every k columns are independent.
    Returns UNDECIDABLE when no hypothesis holds.
    """
    n, m = X.rows, X.cols
    if not (n > m >= k >= 1):
        raise RankOutOfRangeError(f"need rows > cols >= k >= 1, got shape {X.shape}, k={k}")
    name = f"VB_{k - 1}"
    rk = rank(X, tol)
    if k == m:
        s = sign_consistent(X, m, tol)
        if s.verdict in _STRICT_OK:
            return MatrixPropertyCheck(
                name, CheckStatus.CERTIFIED, "strict full-width sign consistency",
                f"epsilon={s.epsilon:+d}; also strictly variation bounding", strict=True)
        if rk == m:
            if s.verdict in (SignVerdict.NONNEGATIVE, SignVerdict.NONPOSITIVE, SignVerdict.ZERO):
                return MatrixPropertyCheck(
                    name, CheckStatus.CERTIFIED, "full-width sign consistency at full column rank")
            if s.verdict is SignVerdict.MIXED:
                return MatrixPropertyCheck(
                    name, CheckStatus.REFUTED, "full-width sign consistency at full column rank",
                    f"conflicting minors {s.witness}")
        return MatrixPropertyCheck(
            name, CheckStatus.UNDECIDABLE, "full-width test needs full column rank",
            f"rank={rk}, verdict={s.verdict.value}")
    if rk == k:
        C = compound(X, k)
        for j, J in enumerate(lex_tuples(m, k)):
            col = classify_family(
                (((I.elems, J.elems), C[i, j]) for i, I in enumerate(lex_tuples(n, k))),
                X.backend, tol)
            if col.verdict is SignVerdict.MIXED:
                return MatrixPropertyCheck(
                    name, CheckStatus.REFUTED, "rank-k compound column sign test",
                    f"column {J} mixed: {col.witness}")
            if col.verdict is SignVerdict.INCONCLUSIVE:
                return MatrixPropertyCheck(
                    name, CheckStatus.UNDECIDABLE, "rank-k compound column sign test",
                    f"column {J} has values inside tolerance")
        return MatrixPropertyCheck(
            name, CheckStatus.CERTIFIED, "rank-k compound column sign test",
            "every compound column is one-signed; bound holds for every input")
    if k < rk:
        if _all_k_columns_independent(X, k, tol):
            s = sign_consistent(X, k, tol)
            if s.passes(strict=False):
                return MatrixPropertyCheck(
                    name, CheckStatus.CERTIFIED, "sign consistency with independent columns",
                    f"epsilon={s.epsilon:+d}" if s.epsilon else "", strict=s.verdict in _STRICT_OK)
            if s.verdict is SignVerdict.MIXED:
                return MatrixPropertyCheck(
                    name, CheckStatus.REFUTED, "sign consistency with independent columns",
                    f"conflicting minors {s.witness}")
            return MatrixPropertyCheck(
                name, CheckStatus.UNDECIDABLE, "sign consistency with independent columns",
                "compound entries inside tolerance")
        return MatrixPropertyCheck(
            name, CheckStatus.UNDECIDABLE, "dependent k-column subset",
            "no characterization applies; defer to the sampling oracle")
    return MatrixPropertyCheck(
        name, CheckStatus.UNDECIDABLE, "rank below tested order",
        f"rank={rk} < k={k}")


def vd_matrix_check(X: Matrix, k: int, tol: float = DEFAULT_TOL) -> MatrixPropertyCheck:
    """Decide whether X is (k-1)-variation diminishing where a characterization applies."""
    n, m = X.rows, X.cols
    if n < m:
        raise RankOutOfRangeError(f"need rows >= cols, got shape {X.shape}")
    if not 1 <= k <= m:
        raise RankOutOfRangeError(f"order {k} invalid for {X.shape}")
    name = f"VD_{k - 1}"
    kp = k_positive(X, k, strict=False, tol=tol)
    if kp.passed:
        return MatrixPropertyCheck(
            name, CheckStatus.CERTIFIED, "total positivity",
            f"order-preserving VD_{k - 1} established")
    rk = rank(X, tol)
    if rk > k and _all_k_columns_independent(X, k, tol):
        sr = sign_regular(X, k, strict=False, tol=tol)
        if sr.passed:
            return MatrixPropertyCheck(
                name, CheckStatus.CERTIFIED, "sign regularity with independent columns")
        bad = next(
            (j for j, s in sr.orders.items() if s.verdict is SignVerdict.MIXED), None)
        if bad is not None:
            return MatrixPropertyCheck(
                name, CheckStatus.REFUTED, "sign regularity with independent columns",
                f"order {bad} minors are mixed: {sr.orders[bad].witness}")
        return MatrixPropertyCheck(
            name, CheckStatus.UNDECIDABLE, "sign regularity with independent columns",
            "minor signs inside tolerance")
    return MatrixPropertyCheck(
        name, CheckStatus.UNDECIDABLE, "hypothesis not met",
        f"rank={rk}; need rank > k with every {k} columns independent, "
        "and the total-positivity route did not apply")

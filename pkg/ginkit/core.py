from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from ginkit.errors import ParameterError, StructuralViolation


@dataclass(frozen=True)
class CIParams:
    """
    A power of a type (alpha, beta) complete intersection in m variables.

    Validated on construction: 1 <= alpha <= beta, n >= 1, m >= 2.
    """

    alpha: int
    beta: int
    n: int
    m: int = 2

    def __post_init__(self) -> None:
        validate_params(self.alpha, self.beta, self.n, self.m)

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "n": self.n, "m": self.m}


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def validate_params(alpha, beta, n, m) -> None:
    """Raise ParameterError naming the first violated constraint."""
    for name, value in (("alpha", alpha), ("beta", beta), ("n", n), ("m", m)):
        if not _is_int(value):
            raise ParameterError(f"{name} must be an integer (got {value!r})")

    if alpha < 1:
        raise ParameterError(f"alpha must be >= 1 (got alpha={alpha})")
    if alpha > beta:
        raise ParameterError(f"alpha must be <= beta (got alpha={alpha}, beta={beta})")
    if n < 1:
        raise ParameterError(f"n must be >= 1 (got n={n})")
    if m < 2:
        raise ParameterError(f"m must be >= 2 for a length-2 regular sequence (got m={m})")


@dataclass(frozen=True)
class DerivedParams:
    k: int
    l: int
    r: int
    lambda0: int
    lambda_last: int
    # Only defined when l > 0
    c: Optional[int] = None
    d: Optional[int] = None
    E: Optional[int] = None
    B: Optional[int] = None


def triangular(q: int) -> int:
    """1 + 2 + ... + q (0 for q <= 0)."""
    if q <= 0:
        return 0
    return q * (q + 1) // 2


def derive(params: CIParams) -> DerivedParams:
    """Exact integer derived quantities of a CIParams."""
    validate_params(params.alpha, params.beta, params.n, params.m)

    alpha, beta, n = params.alpha, params.beta, params.n
    l = beta - alpha

    c = d = E = B = None
    if l > 0:
        c = -(-alpha // l)  # ceil(alpha / l)
        d = alpha % l
        E = l * triangular(c - 1)
        B = l * (triangular(c) - 1)

    return DerivedParams(
        k=n * alpha,
        l=l,
        r=2 * alpha - beta,
        lambda0=n * beta + alpha - 1,
        lambda_last=l + 1,
        c=c,
        d=d,
        E=E,
        B=B,
    )


class CaseTag(str, enum.Enum):
    FAR = "Far"
    MID = "Mid"
    CLOSE_DIVIDES = "CloseDivides"
    CLOSE_NOT_DIVIDES = "CloseNotDivides"
    CLOSE_SMALL_N = "CloseSmallN"
    EQUAL = "Equal"
    SINGLE_POWER_GENERIC = "SinglePowerGeneric"


class PhaseKind(str, enum.Enum):
    BUILD = "Build"
    PATTERN_BLOCK = "PatternBlock"
    PARTIAL_PATTERN_BLOCK = "PartialPatternBlock"
    REVERSE_BUILD_PARTIAL = "ReverseBuildPartial"
    REVERSE_BUILD = "ReverseBuild"


@dataclass(frozen=True)
class PhaseTag:
    kind: PhaseKind
    index: Optional[int] = None  # only for PatternBlock

    @classmethod
    def build(cls) -> "PhaseTag":
        return cls(PhaseKind.BUILD)

    @classmethod
    def block(cls, index: int) -> "PhaseTag":
        return cls(PhaseKind.PATTERN_BLOCK, index)

    @classmethod
    def partial_block(cls) -> "PhaseTag":
        return cls(PhaseKind.PARTIAL_PATTERN_BLOCK)

    @classmethod
    def reverse_build_partial(cls) -> "PhaseTag":
        return cls(PhaseKind.REVERSE_BUILD_PARTIAL)

    @classmethod
    def reverse_build(cls) -> "PhaseTag":
        return cls(PhaseKind.REVERSE_BUILD)

    @property
    def is_pattern(self) -> bool:
        return self.kind in (PhaseKind.PATTERN_BLOCK, PhaseKind.PARTIAL_PATTERN_BLOCK)

    @property
    def label(self) -> str:
        if self.kind is PhaseKind.PATTERN_BLOCK:
            return f"PatternBlock[{self.index}]"
        return self.kind.value

    @classmethod
    def parse(cls, label: str) -> "PhaseTag":
        """Inverse of `label`."""
        text = label.strip()
        if text.startswith("PatternBlock[") and text.endswith("]"):
            return cls.block(int(text[len("PatternBlock["):-1]))
        return cls(PhaseKind(text))


@dataclass(frozen=True)
class InvariantSequence:
    params: CIParams
    lambdas: Tuple[int, ...]
    phases: Tuple[PhaseTag, ...] = field(default=())

    @property
    def k(self) -> int:
        return len(self.lambdas)


@dataclass(frozen=True)
class StableIdeal:
    """(x^k, x^(k-1) y^lambda_(k-1), ..., x y^lambda_1, y^lambda_0)."""

    k: int
    lambdas: Tuple[int, ...]

    def generators(self) -> List[Tuple[int, int]]:
        return minimal_generators(self)


def gaps(seq: InvariantSequence) -> List[int]:
    """g_i = lambda_(i-1) - lambda_i for i = 1..k-1."""
    lam = seq.lambdas
    return [lam[i - 1] - lam[i] for i in range(1, len(lam))]


def allowed_gaps(params: CIParams) -> set:
    return {1, 2, params.beta - 2 * params.alpha + 2}


def structural_violations(seq: InvariantSequence) -> List[str]:
    """
    Every structural rule an invariant sequence must satisfy.
    Returns one message per violated rule (empty list == valid).
    """
    params = seq.params
    der = derive(params)
    lam = list(seq.lambdas)
    problems: List[str] = []

    if len(lam) != der.k:
        problems.append(f"length is {len(lam)}, expected k = n*alpha = {der.k}")
        return problems

    if seq.phases and len(seq.phases) != len(lam):
        problems.append(f"{len(seq.phases)} phase tags for {len(lam)} invariants")

    for i in range(1, len(lam)):
        if lam[i - 1] <= lam[i]:
            problems.append(f"not strictly decreasing at i={i}: {lam[i - 1]} -> {lam[i]}")
            break

    if lam[0] != der.lambda0:
        problems.append(f"lambda_0 = {lam[0]}, expected n*beta + alpha - 1 = {der.lambda0}")
    if lam[-1] != der.lambda_last:
        problems.append(f"lambda_(k-1) = {lam[-1]}, expected beta - alpha + 1 = {der.lambda_last}")

    alphabet = allowed_gaps(params)
    g = gaps(seq)
    bad = sorted({x for x in g if x not in alphabet})
    if bad:
        problems.append(f"gaps {bad} outside the alphabet {sorted(alphabet)}")

    expected_sum = (params.n - 1) * params.beta + 2 * params.alpha - 2
    if sum(g) != expected_sum:
        problems.append(f"gap sum {sum(g)}, expected (n-1)*beta + 2*alpha - 2 = {expected_sum}")

    if seq.phases:
        indices = [p.index for p in seq.phases if p.kind is PhaseKind.PATTERN_BLOCK]
        distinct = sorted(set(indices))
        if distinct and distinct != list(range(len(distinct))):
            problems.append(f"PatternBlock indices {distinct} are not contiguous from 0")

    return problems


def check_sequence(seq: InvariantSequence) -> InvariantSequence:
    """Raise StructuralViolation if `seq` breaks any structural rule."""
    problems = structural_violations(seq)
    if problems:
        raise StructuralViolation(
            f"invalid invariant sequence for {seq.params.as_dict()}: " + "; ".join(problems)
        )
    return seq


def to_generators(seq: InvariantSequence) -> StableIdeal:
    check_sequence(seq)
    return StableIdeal(k=seq.k, lambdas=tuple(seq.lambdas))


def minimal_generators(ideal: StableIdeal) -> List[Tuple[int, int]]:
    """(x_exp, y_exp) pairs, descending x exponent: x^k first, y^lambda_0 last."""
    gens = [(ideal.k, 0)]
    for i in range(ideal.k - 1, -1, -1):
        gens.append((i, ideal.lambdas[i]))
    return gens


def format_generator(x_exp: int, y_exp: int, style: str = "text") -> str:
    """
    text: x^12, x^11*y^9, y^39
    m2:   same, but a bare x or y is still written x^1 / y^1
    """
    parts = []
    for var, exp in (("x", x_exp), ("y", y_exp)):
        if exp == 0:
            continue
        if exp == 1 and style == "text":
            parts.append(var)
        else:
            parts.append(f"{var}^{exp}")
    return "*".join(parts) if parts else "1"


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    """Monomial x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def is_strongly_stable(generators: Iterable[Sequence[int]]) -> bool:
    """
    Strong stability tested on minimal generators:
    x_j * u / x_i stays in the ideal for every generator u, x_i | u, j < i.
    """
    gens = [tuple(g) for g in generators]
    for u in gens:
        for i in range(len(u)):
            if u[i] == 0:
                continue
            for j in range(i):
                moved = list(u)
                moved[i] -= 1
                moved[j] += 1
                if not any(divides(g, moved) for g in gens):
                    return False
    return True

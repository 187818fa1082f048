"""Frobenius classification of valuation rings of function fields over F_p.

Implements the corrected numerical criteria:

* e(v/v^p) = [Gamma : p*Gamma] and f(v/v^p) = [kappa : kappa^p];
* Abhyankar by two independent routes: s + t = n (geometric) and
  e*f = [K:K^p] (numeric), which agree;
* F-finite if and only if the valuation is divisorial (the corrected
  characterization); the original claim "Abhyankar implies F-finite" is
  false and is kept only as a regression check in the test suite;
* F-pure always; F-pure regular iff Noetherian; for DVRs, Frobenius split,
  excellent, split F-regular and F-finite are all equivalent;
* the splitting prime Q = intersection of m^[p^e], with membership decided
  in closed form from the value group.

Every YES/NO verdict carries citation tags naming the rule that fired;
non-Noetherian non-F-finite rings get an honest UNKNOWN for Frobenius
splitting, since that case is an open question.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ZeroArgumentError
from .function_field import RationalFunction
from .valuations import (
    Divisorial,
    MonomialArch,
    SeriesRestriction,
    Valuation,
)

YES, NO, UNKNOWN = "YES", "NO", "UNKNOWN"

# Citation tags (theorem id + one-line rule)
CITE_F_PURE = "Cor-3.3: a valuation ring of characteristic p is F-pure"
CITE_ERRATUM_THM1 = "Erratum-Thm-1: F-finite if and only if divisorial"
CITE_THM_431 = (
    "Thm-4.3.1-corrected: F-finite implies e(v/v^p)*f(v/v^p) = [K:K^p]"
)
CITE_COR_432 = "Cor-4.3.2-revised: [K:K^p] = [kappa:kappa^p] implies F-finite"
CITE_INDEX_OBSTRUCTION = (
    "Erratum-Remark: a valuation ring with [Gamma:pGamma] > p cannot be F-finite"
)
CITE_FSPLIT_FROM_FFINITE = "Cor-4.1.2: an F-finite valuation ring is Frobenius split"
CITE_DVR_EQUIV = (
    "Cor-DVR-equivalence: for a DVR, Frobenius split, F-finite, excellent and "
    "split F-regular are equivalent"
)
CITE_OPEN_QUESTION = (
    "Concluding-Remarks: open whether a non-Noetherian Frobenius split "
    "valuation ring of an F-finite field exists, e.g. with value group Q"
)
CITE_FPR_NOETHERIAN = "Thm-6.5.1: F-pure regular if and only if Noetherian"
CITE_EXCELLENT = (
    "Prop-2.7.1+Cor-DVR-equivalence: excellence requires Noetherian; for these "
    "DVRs it is equivalent to F-finiteness"
)
CITE_NOT_NOETHERIAN = "rank >= 2 value group: the valuation ring is not Noetherian"
CITE_SPLIT_F_REG = (
    "Cor-6.6.3: a DVR with F-finite fraction field is split F-regular iff F-finite"
)
CITE_SPLIT_F_REG_NO = (
    "Thm-6.5.1: split F-regular implies F-pure regular implies Noetherian"
)
CITE_Q = "Thm-6.5.2: F-purity fails exactly along the prime Q = intersection of m^[p^e]"
CITE_DIM_LEMMA = (
    "Erratum-Lemma: dim V/m^[p] over kappa^p is [kappa:kappa^p] if m is not "
    "finitely generated, p*[kappa:kappa^p] if principal"
)
CITE_REMARK_657 = "Remark-6.5.7: V/Q is a DVR if and only if m is principal"
CITE_DIVISORIAL = "Ex-2.5: every rational-rank-one Abhyankar valuation is divisorial"


@dataclass(frozen=True)
class TriVerdict:
    value: str                       # YES | NO | UNKNOWN
    reasons: tuple = ()
    caveats: tuple = ()

    def __post_init__(self):
        assert self.value in (YES, NO, UNKNOWN)
        assert self.reasons, "every verdict must cite at least one rule"

    def __bool__(self):
        return self.value == YES


@dataclass(frozen=True)
class QDescription:
    is_zero: bool
    equals_m: bool
    V_mod_Q_is_DVR: bool
    description: str


@dataclass(frozen=True)
class ClassificationReport:
    e: int
    f_deg: int
    K_Kp: int
    s: int
    t: int
    abhyankar_geometric: bool
    abhyankar_numeric: bool
    divisorial: bool
    noetherian: bool
    m_principal: bool
    f_pure: TriVerdict
    f_finite: TriVerdict
    frobenius_split: TriVerdict
    f_pure_regular: TriVerdict
    split_f_regular: TriVerdict
    excellent: TriVerdict
    dim_V_mod_mp: int
    Q: QDescription
    caveats: tuple = ()
    kind: str = ""

    def to_json_obj(self):
        def verdict(v):
            return {"value": v.value, "citations": sorted(set(v.reasons))}

        return {
            "schema": 1,
            "kind": self.kind,
            "e": self.e,
            "f": self.f_deg,
            "K_Kp": self.K_Kp,
            "s": self.s,
            "t": self.t,
            "abhyankar": {
                "geometric": self.abhyankar_geometric,
                "numeric": self.abhyankar_numeric,
            },
            "divisorial": self.divisorial,
            "noetherian": self.noetherian,
            "m_principal": self.m_principal,
            "f_pure": verdict(self.f_pure),
            "f_finite": verdict(self.f_finite),
            "frobenius_split": verdict(self.frobenius_split),
            "f_pure_regular": verdict(self.f_pure_regular),
            "split_f_regular": verdict(self.split_f_regular),
            "excellent": verdict(self.excellent),
            "dim_V_mod_mp": self.dim_V_mod_mp,
            "Q": {
                "is_zero": self.Q.is_zero,
                "equals_m": self.Q.equals_m,
                "V_mod_Q_is_DVR": self.Q.V_mod_Q_is_DVR,
                "description": self.Q.description,
            },
            "caveats": sorted(self.caveats),
        }


# ---------------------------------------------------------------------------
# Numeric invariants


def ramification_index(v: Valuation) -> int:
    """e(v/v^p) = [Gamma : p*Gamma]."""
    return v.value_group().index_p(v.spec.p)


def residue_degree(v: Valuation) -> int:
    """f(v/v^p) = [kappa : kappa^p] = p^(t + m) for the supported kinds."""
    return v.spec.p ** v.residue_invariants().kappa_p_log


def field_p_degree(spec) -> int:
    """[K:K^p] = p^(m+n)."""
    return spec.field_p_degree()


def abhyankar(v: Valuation) -> dict:
    """Both routes to the Abhyankar property; they agree for every
    constructible valuation (numerical criterion theorem)."""
    inv = v.residue_invariants()
    geometric = inv.s + inv.t == v.spec.n
    numeric = ramification_index(v) * residue_degree(v) == field_p_degree(v.spec)
    return {"geometric": geometric, "numeric": numeric}


def is_divisorial(v: Valuation) -> bool:
    ab = abhyankar(v)
    return ab["geometric"] and v.value_group().rank == 1


# ---------------------------------------------------------------------------
# Splitting prime membership


def _least_positive_and_dense(v: Valuation):
    group = v.value_group()
    g = group.least_positive()
    return group, g, g is None


def in_mp_e(v: Valuation, c: RationalFunction, e: int) -> bool:
    """Membership of c in m^[p^e].

    With a least positive element g the ideal m^[p^e] is generated by values
    >= p^e * g; with a dense archimedean value group, m = m^[p] and the
    condition is just v(c) > 0.
    """
    if c.is_zero():
        raise ZeroArgumentError("zero is not tested for m^[p^e] membership")
    val = v.group_element(v.value_of(c))
    group, g, dense = _least_positive_and_dense(v)
    if dense:
        return group.is_positive(val)
    threshold = group.scale_element(v.spec.p**e, g)
    return group.compare_elements(val, threshold) >= 0


def in_Q(v: Valuation, c: RationalFunction) -> bool:
    """Membership in the splitting prime Q = intersection of m^[p^e]."""
    if c.is_zero():
        raise ZeroArgumentError("zero is not tested for Q membership")
    val = v.group_element(v.value_of(c))
    group, g, dense = _least_positive_and_dense(v)
    if dense:
        return group.is_positive(val)
    return group.dominates_all_multiples(val, g)


def is_F_pure_along(v: Valuation, c: RationalFunction) -> bool:
    return not in_Q(v, c)


def least_pure_exponent(v: Valuation, c: RationalFunction):
    """Least e with c outside m^[p^e], or None when c is in Q."""
    if in_Q(v, c):
        return None
    e = 1
    while in_mp_e(v, c, e):
        e += 1
    return e


def dim_V_mod_mp(v: Valuation) -> int:
    """kappa^p-dimension of V/m^[p]: [kappa:kappa^p] when m is not
    principal (m = m^[p] then), p*[kappa:kappa^p] when it is."""
    f = residue_degree(v)
    if v.value_group().least_positive() is None:
        return f
    return v.spec.p * f


# ---------------------------------------------------------------------------
# The full classification


def classify(v: Valuation) -> ClassificationReport:
    spec = v.spec
    p = spec.p
    group = v.value_group()
    inv = v.residue_invariants()

    e = ramification_index(v)
    f = residue_degree(v)
    kkp = field_p_degree(spec)
    ab = abhyankar(v)
    divisorial = ab["geometric"] and group.rank == 1
    # rank-1 subgroups of R and of lex Z^r are cyclic, hence discrete
    noetherian = group.rank == 1
    m_principal = group.least_positive() is not None

    caveats = tuple(v.caveats)

    f_pure = TriVerdict(YES, (CITE_F_PURE,), caveats)

    if divisorial:
        reasons = [CITE_ERRATUM_THM1, CITE_DIVISORIAL]
        if kkp == f:
            reasons.append(CITE_COR_432)
        f_finite = TriVerdict(YES, tuple(reasons), caveats)
    else:
        reasons = [CITE_ERRATUM_THM1]
        if e * f != kkp:
            reasons.append(CITE_THM_431)
        if e > p:
            reasons.append(CITE_INDEX_OBSTRUCTION)
        f_finite = TriVerdict(NO, tuple(reasons), caveats)

    if f_finite.value == YES:
        frobenius_split = TriVerdict(YES, (CITE_FSPLIT_FROM_FFINITE,), caveats)
    elif noetherian:
        frobenius_split = TriVerdict(NO, (CITE_DVR_EQUIV,), caveats)
    else:
        frobenius_split = TriVerdict(UNKNOWN, (CITE_OPEN_QUESTION,), caveats)

    if noetherian:
        f_pure_regular = TriVerdict(YES, (CITE_FPR_NOETHERIAN,), caveats)
        excellent = TriVerdict(f_finite.value, (CITE_EXCELLENT,), caveats)
        split_f_regular = TriVerdict(f_finite.value, (CITE_SPLIT_F_REG,), caveats)
    else:
        f_pure_regular = TriVerdict(NO, (CITE_FPR_NOETHERIAN, CITE_NOT_NOETHERIAN), caveats)
        excellent = TriVerdict(NO, (CITE_EXCELLENT, CITE_NOT_NOETHERIAN), caveats)
        split_f_regular = TriVerdict(NO, (CITE_SPLIT_F_REG_NO,), caveats)

    dense_arch = group.kind == "arch" and group.rank >= 2
    q_is_zero = noetherian
    if q_is_zero:
        q_desc = "Q = 0: the valuation ring is a DVR, hence F-pure regular"
    elif dense_arch:
        q_desc = (
            "Q = m: the value group is dense in R, so m = m^[p^e] for all e"
        )
    else:
        q_desc = (
            "Q = elements whose value dominates every multiple of the least "
            "positive element of the value group"
        )
    q = QDescription(
        is_zero=q_is_zero,
        equals_m=dense_arch,
        V_mod_Q_is_DVR=m_principal,
        description=q_desc,
    )

    return ClassificationReport(
        e=e,
        f_deg=f,
        K_Kp=kkp,
        s=inv.s,
        t=inv.t,
        abhyankar_geometric=ab["geometric"],
        abhyankar_numeric=ab["numeric"],
        divisorial=divisorial,
        noetherian=noetherian,
        m_principal=m_principal,
        f_pure=f_pure,
        f_finite=f_finite,
        frobenius_split=frobenius_split,
        f_pure_regular=f_pure_regular,
        split_f_regular=split_f_regular,
        excellent=excellent,
        dim_V_mod_mp=dim_V_mod_mp(v),
        Q=q,
        caveats=caveats,
        kind=v.describe_kind(),
    )

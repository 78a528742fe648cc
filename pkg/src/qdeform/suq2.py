"""Finite-dimensional representations of the deformed rotation algebra.

Matrix elements live on a magnetic-label basis ordered DESCENDING from +j to
-j, which makes the raising operator strictly upper triangular.  The adopted
defining relations are

    (1/q) T+ T-  -  q T- T+          =  T3
    q^2  T3 T+  -  q^(-2) T+ T3      =  (q + 1/q) T+
    q^(-2) T3 T- -  q^2  T- T3       = -(q + 1/q) T-

with conjugation T3^† = T3 and T+^† = q^(-2) T-, and the diagonal scaling
operator tau = 1 - (q - 1/q) T3 = q^(-4m).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

import numpy as np

from . import exactmat as xm
from .scalars import (
    HalfInt,
    QExact,
    QExactError,
    halfint_range_desc,
    q_number,
    q_number_value,
)


class SingularLimitError(ValueError):
    """Raised when a construction needs q != 1 (deformation scale vanishes)."""


class DecompositionError(ValueError):
    """Raised when a Casimir eigenvalue matches no candidate spin."""


def _maxabs(m) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def _qn(n: int, r: int, q: float) -> float:
    """Floating value of an integer-index q-number via the exact route."""
    v = q_number(n, r).eval(q)
    return v.real


@dataclass(frozen=True)
class Suq2Rep:
    """Dense representation data; j is None for composite (tensor) spaces."""

    q: float
    T3: np.ndarray
    Tplus: np.ndarray
    Tminus: np.ndarray
    tau: np.ndarray
    j: HalfInt | None = None
    basis: tuple[HalfInt, ...] | None = None

    @property
    def dim(self) -> int:
        return self.T3.shape[0]

    def tau_half(self) -> np.ndarray:
        d = np.real(np.diag(self.tau))
        if np.any(d <= 0):
            raise ValueError("tau must be positive diagonal")
        return np.diag(np.sqrt(d)).astype(complex)


def build_rep(j, q: float) -> Suq2Rep:
    """Spin-j matrices: T3 = (1/q)[2m]_{-2} on the diagonal, ladder entries
    (1/q)sqrt([j+m+1]_{-2}[j-m]_2) and q*sqrt([j+m]_{-2}[j-m+1]_2)."""
    j = HalfInt.coerce(j)
    if j.twice < 0:
        raise ValueError("spin label must be nonnegative")
    if not q >= 1.0:
        raise ValueError("deformation parameter must satisfy q >= 1")
    basis = tuple(halfint_range_desc(j))
    dim = len(basis)
    index = {m.twice: k for k, m in enumerate(basis)}

    T3 = np.zeros((dim, dim), dtype=complex)
    Tp = np.zeros((dim, dim), dtype=complex)
    Tm = np.zeros((dim, dim), dtype=complex)
    for m in basis:
        k = index[m.twice]
        T3[k, k] = (1.0 / q) * _qn(m.twice, -2, q)
        jp_m = (j + m).as_int()
        jm_m = (j - m).as_int()
        if m.twice < j.twice:  # raising entry m -> m+1
            rad = _qn(jp_m + 1, -2, q) * _qn(jm_m, 2, q)
            assert rad >= 0.0, "negative radicand cannot occur for q >= 1"
            Tp[index[m.twice + 2], k] = (1.0 / q) * sqrt(rad)
        if m.twice > -j.twice:  # lowering entry m -> m-1
            rad = _qn(jp_m, -2, q) * _qn(jm_m + 1, 2, q)
            assert rad >= 0.0, "negative radicand cannot occur for q >= 1"
            Tm[index[m.twice - 2], k] = q * sqrt(rad)
    lam = q - 1.0 / q
    tau = np.eye(dim, dtype=complex) - lam * T3
    return Suq2Rep(q=q, T3=T3, Tplus=Tp, Tminus=Tm, tau=tau, j=j, basis=basis)


# ---------------------------------------------------------------------------
# exact variant


@dataclass(frozen=True)
class Suq2RepExact:
    """Representation with entries in the exact scalar ring."""

    T3: xm.ExactMatrix
    Tplus: xm.ExactMatrix
    Tminus: xm.ExactMatrix
    tau: xm.ExactMatrix
    j: HalfInt

    @property
    def dim(self) -> int:
        return len(self.T3)

    def to_rep(self, q: float) -> Suq2Rep:
        return Suq2Rep(
            q=q,
            T3=xm.to_complex(self.T3, q),
            Tplus=xm.to_complex(self.Tplus, q),
            Tminus=xm.to_complex(self.Tminus, q),
            tau=xm.to_complex(self.tau, q),
            j=self.j,
            basis=tuple(halfint_range_desc(self.j)),
        )


def build_rep_exact(j) -> Suq2RepExact:
    """Exact-ring variant; needs every ladder radicand to be a perfect
    monomial square, which holds for j = 0 and j = 1/2."""
    j = HalfInt.coerce(j)
    basis = halfint_range_desc(j)
    dim = len(basis)
    index = {m.twice: k for k, m in enumerate(basis)}
    T3 = [[QExact.zero() for _ in range(dim)] for _ in range(dim)]
    Tp = [[QExact.zero() for _ in range(dim)] for _ in range(dim)]
    Tm = [[QExact.zero() for _ in range(dim)] for _ in range(dim)]
    qinv = QExact.q_power(-1)
    qpow = QExact.q_power(1)
    for m in basis:
        k = index[m.twice]
        T3[k][k] = qinv * q_number(m.twice, -2)
        jp_m = (j + m).as_int()
        jm_m = (j - m).as_int()
        if m.twice < j.twice:
            rad = q_number(jp_m + 1, -2) * q_number(jm_m, 2)
            Tp[index[m.twice + 2]][k] = qinv * rad.sqrt_monomial()
        if m.twice > -j.twice:
            rad = q_number(jp_m, -2) * q_number(jm_m + 1, 2)
            Tm[index[m.twice - 2]][k] = qpow * rad.sqrt_monomial()
    lam = QExact.lam()
    tau = [
        [
            (QExact.one() if i == k else QExact.zero()) - lam * T3[i][k]
            for k in range(dim)
        ]
        for i in range(dim)
    ]
    return Suq2RepExact(T3=xm.mat(T3), Tplus=xm.mat(Tp), Tminus=xm.mat(Tm),
                        tau=xm.mat(tau), j=j)


def spinor_exact() -> Suq2RepExact:
    return build_rep_exact(Fraction(1, 2))


def algebra_defects_exact(rep: Suq2RepExact) -> tuple[xm.ExactMatrix, ...]:
    """Exact defect matrices of the three defining relations."""
    q2 = QExact.q_power(2)
    qinv2 = QExact.q_power(-2)
    qs = QExact.q_power(1) + QExact.q_power(-1)
    T3, Tp, Tm = rep.T3, rep.Tplus, rep.Tminus
    d1 = xm.sub(
        xm.sub(xm.scale(xm.matmul(Tp, Tm), QExact.q_power(-1)),
               xm.scale(xm.matmul(Tm, Tp), QExact.q_power(1))),
        T3,
    )
    d2 = xm.sub(
        xm.sub(xm.scale(xm.matmul(T3, Tp), q2),
               xm.scale(xm.matmul(Tp, T3), qinv2)),
        xm.scale(Tp, qs),
    )
    d3 = xm.add(
        xm.sub(xm.scale(xm.matmul(T3, Tm), qinv2),
               xm.scale(xm.matmul(Tm, T3), q2)),
        xm.scale(Tm, qs),
    )
    return d1, d2, d3


def conjugation_defects_exact(rep: Suq2RepExact) -> tuple[xm.ExactMatrix, ...]:
    dag_t3 = xm.sub(xm.dagger(rep.T3), rep.T3)
    dag_tp = xm.sub(xm.dagger(rep.Tplus), xm.scale(rep.Tminus, QExact.q_power(-2)))
    return dag_t3, dag_tp


# ---------------------------------------------------------------------------
# residuals (floating)


def relation_defects(T3, Tp, Tm, q: float):
    d1 = (1.0 / q) * (Tp @ Tm) - q * (Tm @ Tp) - T3
    d2 = q ** 2 * (T3 @ Tp) - q ** -2 * (Tp @ T3) - (q + 1.0 / q) * Tp
    d3 = q ** -2 * (T3 @ Tm) - q ** 2 * (Tm @ T3) + (q + 1.0 / q) * Tm
    return d1, d2, d3


def algebra_residuals(rep: Suq2Rep) -> tuple[float, float, float]:
    d1, d2, d3 = relation_defects(rep.T3, rep.Tplus, rep.Tminus, rep.q)
    return _maxabs(d1), _maxabs(d2), _maxabs(d3)


def conjugation_residuals(rep: Suq2Rep) -> tuple[float, float]:
    q = rep.q
    r3 = _maxabs(rep.T3.conj().T - rep.T3)
    rp = _maxabs(rep.Tplus.conj().T - q ** -2 * rep.Tminus)
    return r3, rp


# ---------------------------------------------------------------------------
# Casimir


def casimir_eigenvalue(j, q: float) -> float:
    """[j]_{-2} [j+1]_{2}; defined for every half-integer j."""
    j = HalfInt.coerce(j)
    return q_number_value(float(j), -2, q) * q_number_value(float(j) + 1.0, 2, q)


def casimir_matrix(rep: Suq2Rep) -> np.ndarray:
    q = rep.q
    if q == 1.0:
        raise SingularLimitError(
            "Casimir construction needs q > 1 (the deformation scale vanishes)"
        )
    lam = q - 1.0 / q
    th = rep.tau_half()
    th_inv = np.diag(1.0 / np.diag(th))
    dim = rep.dim
    eye = np.eye(dim, dtype=complex)
    return (
        q ** 2 * (rep.Tminus @ rep.Tplus + eye / lam ** 2) @ th_inv
        + (1.0 / lam ** 2) * th
        - ((1.0 + q ** 2) / lam ** 2) * eye
    )


def casimir_commutation_residuals(rep: Suq2Rep) -> tuple[float, float, float]:
    C = casimir_matrix(rep)
    return tuple(
        _maxabs(C @ T - T @ C) for T in (rep.Tplus, rep.Tminus, rep.T3)
    )


# ---------------------------------------------------------------------------
# coproduct


def coproduct(a: Suq2Rep, b: Suq2Rep) -> Suq2Rep:
    """Tensor representation: T3 -> T3 x 1 + tau x T3, and the ladder
    operators pick up tau^(1/2) on the left slot; tau multiplies."""
    if a.q != b.q:
        raise ValueError("tensor factors must share the deformation parameter")
    ib = np.eye(b.dim, dtype=complex)
    tha = a.tau_half()
    T3 = np.kron(a.T3, ib) + np.kron(a.tau, b.T3)
    Tp = np.kron(a.Tplus, ib) + np.kron(tha, b.Tplus)
    Tm = np.kron(a.Tminus, ib) + np.kron(tha, b.Tminus)
    tau = np.kron(a.tau, b.tau)
    return Suq2Rep(q=a.q, T3=T3, Tplus=Tp, Tminus=Tm, tau=tau, j=None, basis=None)


# ---------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True)
class DecompositionReport:
    dim: int
    q: float
    entries: tuple[tuple[HalfInt, int, float], ...]  # (j, multiplicity, eigenvalue)

    def consistent(self) -> bool:
        return sum(mult * (j.twice + 1) for j, mult, _ in self.entries) == self.dim

    def as_dict(self) -> list[dict]:
        return [
            {"j": float(j), "multiplicity": mult, "casimir_eigenvalue": ev}
            for j, mult, ev in self.entries
        ]


def casimir_decompose(rep: Suq2Rep, cluster_rtol: float = 1e-8) -> DecompositionReport:
    """Group Casimir eigenvalues into clusters and identify each with a spin."""
    C = casimir_matrix(rep)
    hermiticity = _maxabs(C - C.conj().T)
    if hermiticity > 1e-9 * max(1.0, _maxabs(C)):
        raise DecompositionError("Casimir is unexpectedly non-hermitean")
    vals = np.linalg.eigvalsh((C + C.conj().T) / 2.0)
    clusters: list[list[float]] = []
    for v in sorted(vals):
        if clusters and abs(v - clusters[-1][-1]) <= cluster_rtol * max(1.0, abs(v)):
            clusters[-1].append(v)
        else:
            clusters.append([v])

    dim = rep.dim
    candidates = [HalfInt(t) for t in range(0, 2 * dim + 1)]
    entries = []
    for cluster in clusters:
        mean = float(np.mean(cluster))
        best = None
        for j in candidates:
            cj = casimir_eigenvalue(j, rep.q)
            err = abs(mean - cj) / max(1.0, abs(cj))
            if best is None or err < best[1]:
                best = (j, err)
        j, err = best
        if err > 1e-6:
            raise DecompositionError(
                f"Casimir cluster at {mean:.6g} matches no candidate spin "
                f"(best j={j} with relative error {err:.3g})"
            )
        block = len(cluster)
        if block % (j.twice + 1) != 0:
            raise DecompositionError(
                f"cluster of size {block} is not a multiple of dim 2j+1 for j={j}"
            )
        entries.append((j, block // (j.twice + 1), mean))
    report = DecompositionReport(dim=dim, q=rep.q, entries=tuple(entries))
    if not report.consistent():
        raise DecompositionError("multiplicities do not sum to the dimension")
    return report


# ---------------------------------------------------------------------------
# classical embedding


@dataclass(frozen=True)
class EmbeddingReport:
    t3_defect: float
    tplus_defect: float
    tminus_defect: float
    algebra_residuals: tuple[float, float, float]
    su2_commutator_defect: float
    su2_casimir_defect: float
    note: str


def from_su2_embedding(j, q: float) -> tuple[Suq2Rep, EmbeddingReport]:
    """Realize the deformed generators inside the classical spin-j algebra.

    The diagonal generator is the closed form (1 - q^(-4 j0)) / (q - 1/q)
    applied to the classical weight operator j0; the raising operator is a
    diagonal function of j0 times the classical ladder j+ (the function is
    fixed entrywise), and the lowering operator is q^2 times its dagger.
    """
    j = HalfInt.coerce(j)
    if not q > 1.0:
        raise SingularLimitError("embedding needs q > 1")
    reference = build_rep(j, q)
    basis = reference.basis
    dim = len(basis)
    lam = q - 1.0 / q

    m_vals = np.array([float(m) for m in basis])
    j0 = np.diag(m_vals).astype(complex)
    jp = np.zeros((dim, dim), dtype=complex)
    jf = float(j)
    for k, m in enumerate(m_vals):
        if k > 0:  # raising m -> m+1 lands one row up in descending order
            jp[k - 1, k] = sqrt((jf - m) * (jf + m + 1.0) / 2.0)
    jm = jp.conj().T

    # entrywise fit of the diagonal factor on levels reached by j+
    f = np.ones(dim)
    for k in range(1, dim):
        ref_entry = reference.Tplus[k - 1, k]
        f[k - 1] = (ref_entry / jp[k - 1, k]).real
    Tp = np.diag(f).astype(complex) @ jp
    T3 = np.diag((1.0 - q ** (-4.0 * m_vals)) / lam).astype(complex)
    Tm = q ** 2 * Tp.conj().T
    tau = np.eye(dim, dtype=complex) - lam * T3
    rep = Suq2Rep(q=q, T3=T3, Tplus=Tp, Tminus=Tm, tau=tau, j=j, basis=basis)

    comm = jp @ jm - jm @ jp - j0
    cas = 2.0 * (jm @ jp) + j0 @ (j0 + np.eye(dim)) - jf * (jf + 1.0) * np.eye(dim)
    report = EmbeddingReport(
        t3_defect=_maxabs(T3 - reference.T3),
        tplus_defect=_maxabs(Tp - reference.Tplus),
        tminus_defect=_maxabs(Tm - reference.Tminus),
        algebra_residuals=algebra_residuals(rep),
        su2_commutator_defect=_maxabs(comm),
        su2_casimir_defect=_maxabs(cas),
        note=(
            "tau diagonal adopted as q^(-4m); the reversed orientation breaks "
            "the coproduct homomorphism and is rejected"
        ),
    )
    return rep, report


# ---------------------------------------------------------------------------
# aggregate report (CLI surface)


def rep_report(j, q: float) -> dict:
    j = HalfInt.coerce(j)
    rep = build_rep(j, q)
    r1, r2, r3 = algebra_residuals(rep)
    c3, cp = conjugation_residuals(rep)
    cj = casimir_eigenvalue(j, q)
    if q > 1.0:
        C = casimir_matrix(rep)
        defect = _maxabs(C - cj * np.eye(rep.dim))
        decomposition = casimir_decompose(rep).as_dict()
    else:
        defect = 0.0
        decomposition = [{"j": float(j), "multiplicity": 1, "casimir_eigenvalue": cj}]
    return {
        "j": float(j),
        "q": q,
        "dims": rep.dim,
        "residuals": {
            "rel1": r1,
            "rel2": r2,
            "rel3": r3,
            "conj": max(c3, cp),
        },
        "casimir": {"eigenvalue": cj, "defect": defect},
        "decomposition": decomposition,
    }

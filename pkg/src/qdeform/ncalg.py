"""Noncommutative polynomial algebra with quadratic-affine reordering rules.

A Presentation fixes an ordered generator list and, for out-of-order adjacent
generator pairs, a rewrite target that is a combination of normal-ordered
monomials of degree <= 2 plus an optional constant.  Rewriting never raises
degree, so normal forms exist whenever the rule set terminates; a step budget
guards the rest.  Flatness diagnostics decide monomial counts and discovered
relations by linear algebra at a generic rational point, then re-verify each
discovered relation symbolically over the exact scalar ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping

from .scalars import GR_ONE, GaussRat, QExact, QExactError

DEFAULT_STEP_BUDGET = 200_000
DEFAULT_WORD_BUDGET = 30_000
DEFAULT_BRANCH_BUDGET = 20_000

# generic rational evaluation point for rank decisions: s = 7/5, q = 49/25
GENERIC_S = Fraction(7, 5)


class PresentationError(ValueError):
    """Malformed presentation or mismatched operands."""


class MissingRuleError(PresentationError):
    """An out-of-order adjacent pair has no reordering rule."""


class DivergedError(RuntimeError):
    """A rewrite or scan exceeded its step budget."""


ExpVec = tuple[int, ...]
Word = tuple[int, ...]


def _expand(expvec: ExpVec) -> Word:
    word: list[int] = []
    for g, e in enumerate(expvec):
        word.extend([g] * e)
    return tuple(word)


def _word_expvec(word: Word, arity: int) -> ExpVec:
    ev = [0] * arity
    for g in word:
        ev[g] += 1
    return tuple(ev)


def _is_normal(word: Word) -> bool:
    return all(word[k] <= word[k + 1] for k in range(len(word) - 1))


@dataclass(frozen=True)
class Presentation:
    """Ordered generators plus reordering rules for out-of-order pairs.

    rules maps (left_gen, right_gen) with left_gen > right_gen to a tuple of
    (exponent vector, exact coefficient) targets.  generators[:n_coords] are
    coordinate symbols; the rest are operator symbols (used by the derivative
    action to encode "operator acting on 1 gives 0").
    """

    generators: tuple[str, ...]
    rules: Mapping[tuple[int, int], tuple[tuple[ExpVec, QExact], ...]]
    n_coords: int = field(default=-1)
    name: str = "custom"

    def __post_init__(self):
        k = len(self.generators)
        if k == 0 or len(set(self.generators)) != k:
            raise PresentationError("generators must be distinct and nonempty")
        if self.n_coords == -1:
            object.__setattr__(self, "n_coords", k)
        if not 0 <= self.n_coords <= k:
            raise PresentationError("coordinate count out of range")
        for (b, a), targets in self.rules.items():
            if not (0 <= a < k and 0 <= b < k and b > a):
                raise PresentationError(
                    f"rule key ({b},{a}) must name an out-of-order pair"
                )
            for ev, coeff in targets:
                if len(ev) != k or any(e < 0 for e in ev):
                    raise PresentationError(f"bad target exponent vector {ev}")
                if sum(ev) > 2:
                    raise PresentationError(
                        "rule targets must have degree <= 2 (degree never increases)"
                    )
                if not isinstance(coeff, QExact) or coeff.is_zero():
                    raise PresentationError("rule coefficients must be nonzero QExact")

    @property
    def arity(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise PresentationError(
                f"unknown generator {name!r}; have {', '.join(self.generators)}"
            ) from None

    def rule_for(self, left: int, right: int):
        if left <= right:
            return None
        try:
            return self.rules[(left, right)]
        except KeyError:
            gl, gr = self.generators[left], self.generators[right]
            raise MissingRuleError(
                f"no reordering rule for {gl}*{gr} in presentation {self.name!r}"
            ) from None

    def gen(self, name: str) -> "NCPoly":
        ev = [0] * self.arity
        ev[self.index(name)] = 1
        return NCPoly(self, {tuple(ev): QExact.one()})

    def one(self) -> "NCPoly":
        return NCPoly(self, {(0,) * self.arity: QExact.one()})

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def scalar(self, value) -> "NCPoly":
        return NCPoly(self, {(0,) * self.arity: QExact._coerce(value)})


def _leftmost_descent(pres: Presentation, word: Word):
    for k in range(len(word) - 1):
        if word[k] > word[k + 1]:
            return k
    return None


def normal_form_words(
    pres: Presentation,
    word_terms: Mapping[Word, QExact],
    budget: int = DEFAULT_STEP_BUDGET,
) -> "NCPoly":
    """Rewrite a combination of raw words to its normal form.

    Each popped word has its leftmost out-of-order pair rewritten; branches
    with identical words are merged immediately so coefficients can cancel.
    """
    result: dict[ExpVec, QExact] = {}
    pending: dict[Word, QExact] = {}
    for w, c in word_terms.items():
        c = QExact._coerce(c)
        if not c.is_zero():
            acc = pending.get(w, QExact.zero()) + c
            if acc.is_zero():
                pending.pop(w, None)
            else:
                pending[w] = acc
    steps = 0
    arity = pres.arity
    while pending:
        word, coeff = pending.popitem()
        pos = _leftmost_descent(pres, word)
        if pos is None:
            ev = _word_expvec(word, arity)
            acc = result.get(ev, QExact.zero()) + coeff
            if acc.is_zero():
                result.pop(ev, None)
            else:
                result[ev] = acc
            continue
        steps += 1
        if steps > budget:
            raise DivergedError(
                f"rewrite budget of {budget} steps exceeded "
                f"(presentation {pres.name!r} is not terminating here)"
            )
        targets = pres.rule_for(word[pos], word[pos + 1])
        head, tail = word[:pos], word[pos + 2:]
        for ev, c in targets:
            nw = head + _expand(ev) + tail
            acc = pending.get(nw, QExact.zero()) + coeff * c
            if acc.is_zero():
                pending.pop(nw, None)
            else:
                pending[nw] = acc
    return NCPoly(pres, result)


def normal_form(pres: Presentation, value, budget: int = DEFAULT_STEP_BUDGET) -> "NCPoly":
    """Normal form of a word, a word->coefficient mapping, or an NCPoly."""
    if isinstance(value, NCPoly):
        if value.pres is not pres:
            raise PresentationError("polynomial belongs to a different presentation")
        return value  # normal by construction
    if isinstance(value, tuple):
        return normal_form_words(pres, {value: QExact.one()}, budget)
    if isinstance(value, Mapping):
        return normal_form_words(pres, value, budget)
    raise TypeError(f"cannot normalize {value!r}")


class NCPoly:
    """Finitely supported combination of normal-ordered monomials."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: Presentation, terms: Mapping[ExpVec, QExact]):
        clean: dict[ExpVec, QExact] = {}
        for ev, c in terms.items():
            c = QExact._coerce(c)
            if not c.is_zero():
                clean[tuple(ev)] = c
        self.pres = pres
        self.terms = clean

    # -- construction ---------------------------------------------------

    @classmethod
    def from_word(cls, pres: Presentation, word: Word, coeff=1) -> "NCPoly":
        return normal_form_words(pres, {tuple(word): QExact._coerce(coeff)})

    # -- ring operations --------------------------------------------------

    def _check_same(self, other: "NCPoly"):
        if self.pres is not other.pres:
            raise PresentationError("operands belong to different presentations")

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            other = self.pres.scalar(other)
        self._check_same(other)
        out = dict(self.terms)
        for ev, c in other.terms.items():
            acc = out.get(ev, QExact.zero()) + c
            if acc.is_zero():
                out.pop(ev, None)
            else:
                out[ev] = acc
        return NCPoly(self.pres, out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            other = self.pres.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return NCPoly(self.pres, {ev: -c for ev, c in self.terms.items()})

    def scale(self, scalar) -> "NCPoly":
        s = QExact._coerce(scalar)
        return NCPoly(self.pres, {ev: c * s for ev, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        self._check_same(other)
        words: dict[Word, QExact] = {}
        for ev1, c1 in self.terms.items():
            w1 = _expand(ev1)
            for ev2, c2 in other.terms.items():
                w = w1 + _expand(ev2)
                acc = words.get(w, QExact.zero()) + c1 * c2
                if acc.is_zero():
                    words.pop(w, None)
                else:
                    words[w] = acc
        return normal_form_words(self.pres, words)

    def __rmul__(self, other):
        # scalars commute with everything; NCPoly*NCPoly handled by __mul__
        return self.scale(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PresentationError("polynomial powers must be nonnegative integers")
        acc = self.pres.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.pres is other.pres and self.terms == other.terms

    def __hash__(self):
        return hash(self.freeze())

    def freeze(self):
        return tuple(sorted((ev, c.freeze()) for ev, c in self.terms.items()))

    # -- predicates and views ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(ev) for ev in self.terms), default=0)

    def coefficient(self, expvec: ExpVec) -> QExact:
        return self.terms.get(tuple(expvec), QExact.zero())

    def supported_on_coords(self) -> bool:
        nc = self.pres.n_coords
        return all(all(e == 0 for e in ev[nc:]) for ev in self.terms)

    # -- rendering -------------------------------------------------------

    def _monomial_str(self, ev: ExpVec) -> str:
        parts = []
        for name, e in zip(self.pres.generators, ev):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    @staticmethod
    def _term_key(ev: ExpVec):
        # ascending degree; within a degree, most unbalanced exponent pattern
        # first, ties broken by descending lexicographic exponent vector
        imbalance = sum(e * e for e in ev)
        return (sum(ev), -imbalance, tuple(-e for e in ev))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for ev in sorted(self.terms, key=self._term_key):
            c = self.terms[ev]
            mono = self._monomial_str(ev)
            if mono == "1":
                parts.append(c.render())
                continue
            if c.is_one():
                parts.append(mono)
            elif c == QExact.rational(-1):
                parts.append(f"-{mono}")
            elif c.is_monomial():
                parts.append(f"{c.render()}*{mono}")
            else:
                parts.append(f"({c.render()})*{mono}")
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += f" - {p[1:]}"
            else:
                out += f" + {p}"
        return out

    def __repr__(self):
        return f"NCPoly[{self.render()}]"


def check_identity(lhs: NCPoly, rhs: NCPoly) -> bool:
    """Exact equality of normal forms."""
    if not isinstance(lhs, NCPoly) or not isinstance(rhs, NCPoly):
        raise PresentationError("check_identity expects two polynomials")
    lhs._check_same(rhs)
    return (lhs - rhs).is_zero()


# ---------------------------------------------------------------------------
# brute-force reduction under all rewrite orders (confluence oracle)


def all_normal_forms(
    pres: Presentation, word: Word, budget: int = DEFAULT_BRANCH_BUDGET
) -> set:
    """All normal forms reachable from a word under every rewrite order.

    Returns a set of frozen polynomials (NCPoly.freeze images).  A cyclic
    rewrite dependency or a combinatorial blowup raises DivergedError.
    """
    word = tuple(word)
    arity = pres.arity
    # memo values: tuple of term dicts (one per reachable normal form)
    memo: dict[Word, tuple[dict, ...]] = {}
    active: set[Word] = set()
    counter = [0]

    def _add_into(out: dict, terms: dict, coeff: QExact) -> None:
        for ev, c in terms.items():
            acc = out.get(ev, QExact.zero()) + coeff * c
            if acc.is_zero():
                out.pop(ev, None)
            else:
                out[ev] = acc

    def _freeze(d: dict):
        return tuple(sorted((ev, c.freeze()) for ev, c in d.items()))

    def anf(w: Word) -> tuple[dict, ...]:
        if w in memo:
            return memo[w]
        if w in active:
            raise DivergedError(
                f"cyclic rewriting reachable from a word in {pres.name!r}"
            )
        positions = [k for k in range(len(w) - 1) if w[k] > w[k + 1]]
        if not positions:
            res = ({_word_expvec(w, arity): QExact.one()},)
            memo[w] = res
            return res
        active.add(w)
        seen: set = set()
        results: list[dict] = []
        for pos in positions:
            targets = pres.rule_for(w[pos], w[pos + 1])
            head, tail = w[:pos], w[pos + 2:]
            combos: list[dict] = [{}]
            for ev, c in targets:
                children = anf(head + _expand(ev) + tail)
                new_combos = []
                for base in combos:
                    for child in children:
                        counter[0] += 1
                        if counter[0] > budget:
                            raise DivergedError(
                                f"branch budget of {budget} exceeded while "
                                "enumerating rewrite orders"
                            )
                        merged = dict(base)
                        _add_into(merged, child, c)
                        new_combos.append(merged)
                combos = new_combos
            for d in combos:
                key = _freeze(d)
                if key not in seen:
                    seen.add(key)
                    results.append(d)
        active.discard(w)
        res = tuple(results)
        memo[w] = res
        return res

    return {_freeze(d) for d in anf(word)}


# ---------------------------------------------------------------------------
# derivative action on coordinate polynomials


def derivative_apply(d_symbol: str, poly: NCPoly) -> NCPoly:
    """Act with an operator generator on a coordinate polynomial.

    Computes the normal form of d*poly, then drops every monomial that still
    contains an operator symbol (the operator acting on 1 gives 0).
    """
    pres = poly.pres
    d_idx = pres.index(d_symbol) if isinstance(d_symbol, str) else int(d_symbol)
    if d_idx < pres.n_coords:
        raise PresentationError(
            f"{pres.generators[d_idx]!r} is a coordinate, not an operator symbol"
        )
    if not poly.supported_on_coords():
        raise PresentationError("polynomial must contain coordinate symbols only")
    words: dict[Word, QExact] = {}
    for ev, c in poly.terms.items():
        words[(d_idx,) + _expand(ev)] = c
    pushed = normal_form_words(pres, words)
    nc = pres.n_coords
    kept = {
        ev: c
        for ev, c in pushed.terms.items()
        if all(e == 0 for e in ev[nc:])
    }
    return NCPoly(pres, kept)


# ---------------------------------------------------------------------------
# flatness scan


@dataclass(frozen=True)
class FlatnessReport:
    presentation: str
    max_degree: int
    counts: tuple[int, ...]        # reachable normal monomials per degree 0..D
    flat_counts: tuple[int, ...]   # binomial reference counts per degree
    relations: tuple[NCPoly, ...]  # discovered relations, symbolically verified

    @property
    def is_flat(self) -> bool:
        return not self.relations and self.counts == self.flat_counts

    def relation_degrees(self) -> tuple[int, ...]:
        return tuple(r.degree() for r in self.relations)


class _RatQ:
    """Fraction field of the exact scalar ring (for symbolic elimination)."""

    __slots__ = ("num", "den")

    def __init__(self, num: QExact, den: QExact | None = None):
        self.num = num
        self.den = QExact.one() if den is None else den
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator in symbolic elimination")

    @classmethod
    def of(cls, value) -> "_RatQ":
        if isinstance(value, _RatQ):
            return value
        return cls(QExact._coerce(value))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "_RatQ") -> "_RatQ":
        return _RatQ(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "_RatQ") -> "_RatQ":
        return _RatQ(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: "_RatQ") -> "_RatQ":
        return _RatQ(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "_RatQ") -> "_RatQ":
        if other.is_zero():
            raise ZeroDivisionError("division by zero in symbolic elimination")
        return _RatQ(self.num * other.den, self.den * other.num)

    def __neg__(self) -> "_RatQ":
        return _RatQ(-self.num, self.den)


def _one_step_rows(pres: Presentation, words: list[Word]):
    """One-step rewrite equations word - image = 0, as sparse rows."""
    rows = []
    for w in words:
        for pos in range(len(w) - 1):
            if w[pos] <= w[pos + 1]:
                continue
            targets = pres.rule_for(w[pos], w[pos + 1])
            row: dict[Word, QExact] = {w: QExact.one()}
            head, tail = w[:pos], w[pos + 2:]
            for ev, c in targets:
                nw = head + _expand(ev) + tail
                acc = row.get(nw, QExact.zero()) - c
                if acc.is_zero():
                    row.pop(nw, None)
                else:
                    row[nw] = acc
            if row:
                rows.append(row)
    return rows


def _sparse_rref(rows: list[dict], order: dict, field_ops) -> dict:
    """Reduced echelon form of sparse rows over an arbitrary field.

    rows map column keys to field elements; order maps column keys to their
    elimination rank (smaller rank is eliminated first).  Returns a mapping
    pivot-column -> fully reduced row with unit pivot.
    """
    zero_test, div, mul, sub = field_ops
    pivots: dict = {}

    def reduce_row(row: dict) -> dict:
        row = dict(row)
        while row:
            col = min(row, key=order.__getitem__)
            if col not in pivots:
                return row
            factor = row[col]
            prow = pivots[col]
            for c2, v2 in prow.items():
                acc = sub(row.get(c2), mul(factor, v2))
                if zero_test(acc):
                    row.pop(c2, None)
                else:
                    row[c2] = acc
        return row

    for raw in rows:
        row = reduce_row(raw)
        if not row:
            continue
        col = min(row, key=order.__getitem__)
        inv = row[col]
        row = {c: div(v, inv) for c, v in row.items()}
        # back-substitute into existing pivot rows
        for pcol, prow in pivots.items():
            if col in prow:
                f = prow[col]
                for c2, v2 in row.items():
                    acc = sub(prow.get(c2), mul(f, v2))
                    if zero_test(acc):
                        prow.pop(c2, None)
                    else:
                        prow[c2] = acc
        pivots[col] = row
    return pivots


def _gauss_ops():
    zero = GaussRat(Fraction(0), Fraction(0))

    def sub(a, b):
        return (a if a is not None else zero) - b

    return (
        lambda v: v.is_zero(),
        lambda a, b: a / b,
        lambda a, b: a * b,
        sub,
    )


def _ratq_ops():
    def sub(a, b):
        return (a if a is not None else _RatQ(QExact.zero())) - b

    return (
        lambda v: v.is_zero(),
        lambda a, b: a / b,
        lambda a, b: a * b,
        sub,
    )


def _column_order(pres: Presentation, words: list[Word]) -> dict:
    arity = pres.arity
    non_normal = sorted((w for w in words if not _is_normal(w)), key=lambda w: (len(w), w))
    normal = sorted(
        (w for w in words if _is_normal(w)),
        key=lambda w: (len(w), _word_expvec(w, arity)),
        reverse=True,
    )
    return {w: k for k, w in enumerate(non_normal + normal)}


def flatness_scan(
    pres: Presentation,
    max_degree: int,
    word_budget: int = DEFAULT_WORD_BUDGET,
) -> FlatnessReport:
    """Count reachable normal monomials per degree and discover relations.

    Every one-step rewrite of every word of degree <= max_degree yields a
    linear equation; reduced echelon form over an exact generic evaluation
    point determines the quotient dimensions.  Rows supported entirely on
    normal monomials are candidate relations; each is lifted to exact
    coefficients and re-verified by symbolic elimination before reporting.
    """
    if max_degree > 8:
        raise PresentationError("flatness scan supports max_degree <= 8")
    k = pres.arity
    total = sum(k ** d for d in range(max_degree + 1))
    if total > word_budget:
        raise DivergedError(
            f"word budget exceeded: {total} words of degree <= {max_degree} "
            f"over {k} generators (budget {word_budget})"
        )

    words: list[Word] = [()]
    frontier: list[Word] = [()]
    for _ in range(max_degree):
        frontier = [w + (g,) for w in frontier for g in range(k)]
        words.extend(frontier)

    order = _column_order(pres, words)
    rows = _one_step_rows(pres, words)
    numeric_rows = [
        {w: c.eval_at_s(GENERIC_S) for w, c in row.items()} for row in rows
    ]
    pivots = _sparse_rref(numeric_rows, order, _gauss_ops())

    # classify pivots
    normal_pivot_rows = {
        col: row for col, row in pivots.items() if _is_normal(col)
    }
    for col, row in normal_pivot_rows.items():
        stray = [w for w in row if not _is_normal(w)]
        if stray:  # cannot happen given the column ordering; guard anyway
            raise DivergedError("relation row touches non-normal columns")

    # reachable counts per degree
    counts = []
    flat_counts = []
    for d in range(max_degree + 1):
        n_normal = comb(d + k - 1, k - 1)
        n_pivots = sum(1 for col in normal_pivot_rows if len(col) == d)
        counts.append(n_normal - n_pivots)
        flat_counts.append(n_normal)

    # lift relations to exact coefficients and re-verify symbolically
    relations = []
    for col in sorted(normal_pivot_rows, key=order.__getitem__):
        row = normal_pivot_rows[col]
        lifted = {
            _word_expvec(w, k): QExact.gauss(v) for w, v in row.items()
        }
        candidate = NCPoly(pres, lifted)
        _verify_relation_symbolically(pres, candidate, words, rows, order)
        relations.append(candidate)

    return FlatnessReport(
        presentation=pres.name,
        max_degree=max_degree,
        counts=tuple(counts),
        flat_counts=tuple(flat_counts),
        relations=tuple(relations),
    )


def _verify_relation_symbolically(
    pres: Presentation,
    candidate: NCPoly,
    words: list[Word],
    rows: list[dict],
    order: dict,
) -> None:
    """Check that a lifted relation lies in the symbolic row span.

    Eliminates the one-step system over the fraction field of the exact
    scalar ring (restricted to words of degree <= the relation degree) and
    reduces the candidate row against it; a nonzero remainder means the
    generic-point lift was unsound and is reported as an error.
    """
    deg = candidate.degree()
    sub_rows = [
        {w: _RatQ.of(c) for w, c in row.items()}
        for row in rows
        if max(len(w) for w in row) <= deg
    ]
    pivots = _sparse_rref(sub_rows, order, _ratq_ops())

    remainder: dict[Word, _RatQ] = {
        _expand(ev): _RatQ.of(c) for ev, c in candidate.terms.items()
    }
    while remainder:
        col = min(remainder, key=order.__getitem__)
        if col not in pivots:
            raise QExactError(
                f"discovered relation {candidate.render()!r} failed the "
                "symbolic re-check; generic-point lift is unsound here"
            )
        factor = remainder[col]
        for c2, v2 in pivots[col].items():
            acc = remainder.get(c2, _RatQ.of(0)) - factor * v2
            if acc.is_zero():
                remainder.pop(c2, None)
            else:
                remainder[c2] = acc

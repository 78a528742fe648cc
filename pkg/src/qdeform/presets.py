"""Built-in presentations for the quantum-plane and operator algebras."""

from __future__ import annotations

from .ncalg import Presentation
from .scalars import GR_ONE, QExact


def _q(k, coeff=1) -> QExact:
    return QExact.q_power(k, coeff=coeff)


def manin_plane() -> Presentation:
    """Two-dimensional quantum plane: y*x -> q^(-1)*x*y."""
    return Presentation(
        generators=("x", "y"),
        rules={(1, 0): (((1, 1), _q(-1)),)},
        n_coords=2,
        name="manin",
    )


def counterexample_plane() -> Presentation:
    """Quadratic rule y*x -> x*y + x^2 + y^2 that fails to stay flat."""
    one = QExact.one()
    return Presentation(
        generators=("x", "y"),
        rules={(1, 0): (((1, 1), one), ((2, 0), one), ((0, 2), one))},
        n_coords=2,
        name="counterexample",
    )


def q_heisenberg() -> Presentation:
    """Deformed phase-space pair: p*x -> q*x*p - i."""
    return Presentation(
        generators=("x", "p"),
        rules={(1, 0): (((1, 1), _q(1)), ((0, 0), -QExact.i()))},
        n_coords=1,
        name="qheisenberg",
    )


def wz_calculus() -> Presentation:
    """Covariant differential calculus on the quantum plane.

    Generators x < y < dx < dy; dx and dy are operator symbols.  There is
    deliberately no reordering rule for the pair dy*dx: an expression that
    needs it is outside the calculus implemented here and raises.
    """
    one = QExact.one()
    q2 = _q(2)
    qlam = QExact({4: GR_ONE}) - QExact.one()  # q*(q - 1/q) = q^2 - 1
    return Presentation(
        generators=("x", "y", "dx", "dy"),
        rules={
            (1, 0): (((1, 1, 0, 0), _q(-1)),),
            (2, 0): (
                ((0, 0, 0, 0), one),
                ((1, 0, 1, 0), q2),
                ((0, 1, 0, 1), qlam),
            ),
            (2, 1): (((0, 1, 1, 0), _q(1)),),
            (3, 0): (((1, 0, 0, 1), _q(1)),),
            (3, 1): (((0, 0, 0, 0), one), ((0, 1, 0, 1), q2)),
        },
        n_coords=2,
        name="wz-calculus",
    )


def suq2_module() -> Presentation:
    """Quantum plane as a module algebra over the deformed rotation algebra.

    Generators x < y < T3 < Tp < Tm.  The coordinate rules carry the spinor
    action as their inhomogeneous parts; the T-T rules are the defining
    algebra relations solved for the out-of-order products.  The coordinate
    action normalizes the raising generator with an extra q^(1/2) relative
    to the bare spinor matrices, so the mixed Tm*Tp rule carries q^(-1/2)
    on its T3 term; with that scaling every overlap is confluent (the
    flatness scan stays flat), while a bare-T3 coefficient would collapse
    the plane to a point.
    """
    return Presentation(
        generators=("x", "y", "T3", "Tp", "Tm"),
        rules={
            # quantum plane
            (1, 0): (((1, 1, 0, 0, 0), _q(-1)),),
            # T3 past coordinates
            (2, 0): (
                ((1, 0, 1, 0, 0), _q(2)),
                ((1, 0, 0, 0, 0), _q(1, coeff=-1)),
            ),
            (2, 1): (
                ((0, 1, 1, 0, 0), _q(-2)),
                ((0, 1, 0, 0, 0), _q(-1)),
            ),
            # Tp past coordinates
            (3, 0): (
                ((1, 0, 0, 1, 0), _q(1)),
                ((0, 1, 0, 0, 0), QExact.s_power(-1)),
            ),
            (3, 1): (((0, 1, 0, 1, 0), _q(-1)),),
            # Tm past coordinates
            (4, 0): (((1, 0, 0, 0, 1), _q(1)),),
            (4, 1): (
                ((0, 1, 0, 0, 1), _q(-1)),
                ((1, 0, 0, 0, 0), _q(1)),
            ),
            # T-T reordering from the defining relations
            (3, 2): (
                ((0, 0, 1, 1, 0), _q(4)),
                ((0, 0, 0, 1, 0), -(_q(3) + _q(1))),
            ),
            (4, 2): (
                ((0, 0, 1, 0, 1), _q(-4)),
                ((0, 0, 0, 0, 1), _q(-1) + _q(-3)),
            ),
            (4, 3): (
                ((0, 0, 0, 1, 1), _q(-2)),
                ((0, 0, 1, 0, 0), QExact.s_power(-1, coeff=-1)),
            ),
        },
        n_coords=2,
        name="suq2-module",
    )


PRESETS = {
    "manin": manin_plane,
    "counterexample": counterexample_plane,
    "qheisenberg": q_heisenberg,
    "wz-calculus": wz_calculus,
    "suq2-module": suq2_module,
}


def get_preset(name: str) -> Presentation:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None

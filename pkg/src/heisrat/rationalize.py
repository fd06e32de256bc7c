"""The explicit rationalization tower for C(x_0, ..., x_{n-1})^{H_n}.

Stages (each a monomial coordinate change checked by lattice arithmetic):

    x  --lambda-->  y_0 = x_0^n, y_i = x_i / x_{i-1}
    y  --tail-->    y_1 .. y_{n-1} (y_0 dropped; reduction cited)
    y  --xi-->      z_1 = y_1^n, z_i = y_i / y_{i-1}
    z  --w-->       w_1 = z_2, w_i = eta^(i-1)(z_2)
    w  --linearize-> adjoin u with eta(u) = u w_1, W_i = u w_1 ... w_{i-1},
                     then Fourier-diagonalize the cyclic shift of the W_i
    u_j  --Fischer-> invariant monomials of a diagonal Z/n action

Every step records machine-checked witnesses; steps that rest on an
external theorem are marked Cited with the exact citation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .heisenberg import commutator, schrodinger
from .intlattice import Lattice, det, is_unimodular
from .laurent import (
    LaurentPolynomial,
    ScaledMonomialMap,
    default_variables,
    order_of,
    pullback,
    render,
)
from .torus import (
    check_shift_diagonalization,
    diagonal_action_of,
    diagonalize_cyclic_permutation,
    fischer_generators,
    induced_action,
    invariant_character_lattice,
    restrict_action,
    subgroup_order,
    verify_generating_set,
)

__all__ = [
    "CITE_CHU_KANG_LINEARIZE",
    "CITE_CHU_KANG_REDUCTION",
    "CITE_FISCHER",
    "CITE_TRIVIAL",
    "RationalityCertificate",
    "TowerStep",
    "build_certificate",
    "fischer_step",
    "lambda_step",
    "linearize_step",
    "projective_tower",
    "tail_reduction",
    "tower_data",
    "w_step",
    "xi_step",
]

CERTIFICATE_VERSION = 1

CITE_CHU_KANG_REDUCTION = "chu-kang Thm 4.1"
CITE_CHU_KANG_LINEARIZE = "chu-kang p. 687"
CITE_FISCHER = "fis"
CITE_TRIVIAL = "evident when n <= 3"


@dataclass
class TowerStep:
    name: str
    kind: str
    citation: str | None = None
    checks: dict[str, bool] = field(default_factory=dict)
    witness: dict = field(default_factory=dict)
    residual: dict[str, list[str]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def status(self) -> str:
        if not self.passed:
            return "Failed"
        return "Cited" if self.citation else "Verified"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "status": self.status,
            "citation": self.citation,
            "checks": dict(self.checks),
            "witness": self.witness,
            "residual": self.residual,
            "notes": list(self.notes),
        }


@dataclass
class RationalityCertificate:
    n: int
    steps: list[TowerStep]
    discrepancies: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def failed_step(self) -> TowerStep | None:
        return next((s for s in self.steps if not s.passed), None)

    @property
    def verdict(self) -> str:
        failed = self.failed_step
        return "AllVerifiedOrCited" if failed is None else f"Failed({failed.name})"

    @property
    def citations(self) -> list[str]:
        return [s.citation for s in self.steps if s.citation]

    def to_dict(self) -> dict:
        return {
            "version": CERTIFICATE_VERSION,
            "n": self.n,
            "steps": [s.to_dict() for s in self.steps],
            "discrepancies": list(self.discrepancies),
            "notes": list(self.notes),
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# helpers


def _phase_str(p: Fraction) -> str:
    return str(p)


def describe_map(m: ScaledMonomialMap, names) -> list[str]:
    """``name -> image`` lines for each coordinate."""
    out = []
    for j, name in enumerate(names):
        image = pullback(LaurentPolynomial.variable(m.dim, j, names), m)
        out.append(f"{name} -> {render(image)}")
    return out


def _map_dict(m: ScaledMonomialMap) -> dict:
    return {"matrix": [list(r) for r in m.matrix], "phases": [_phase_str(p) for p in m.phases]}


def _lift(rows, base_rows):
    """Exponent rows over coordinates given by ``base_rows`` -> rows over the base's ambient."""
    dim = len(base_rows[0])
    return [tuple(sum(r[k] * base_rows[k][i] for k in range(len(base_rows))) for i in range(dim))
            for r in rows]


def _consistent(original: ScaledMonomialMap, coords_x, residual: ScaledMonomialMap) -> bool:
    """Pulling back ``x^coords_x[k]`` by ``original`` matches the residual map lifted to x."""
    for k, row in enumerate(coords_x):
        exp = original.image_exponent(row)
        phase = original.image_phase(row)
        lifted = tuple(sum(residual.matrix[i][k] * coords_x[i][t] for i in range(len(coords_x)))
                       for t in range(len(row)))
        if exp != lifted or phase != residual.phases[k]:
            return False
    return True


def _monomial(e, names, coeff=1) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(e, coeff, names)


def y_rows(n: int) -> list[tuple[int, ...]]:
    rows = [tuple(n if i == 0 else 0 for i in range(n))]
    for k in range(1, n):
        rows.append(tuple(1 if i == k else -1 if i == k - 1 else 0 for i in range(n)))
    return rows


def z_rows(n: int) -> list[tuple[int, ...]]:
    """z_1 = y_1^n, z_i = y_i / y_{i-1}, over the tail coordinates y_1 .. y_{n-1}."""
    d = n - 1
    rows = [tuple(n if i == 0 else 0 for i in range(d))]
    for k in range(1, d):
        rows.append(tuple(1 if i == k else -1 if i == k - 1 else 0 for i in range(d)))
    return rows


@dataclass(frozen=True)
class TowerData:
    n: int
    xi: ScaledMonomialMap
    eta: ScaledMonomialMap
    lam: ScaledMonomialMap
    y_rows: tuple
    xi_y: ScaledMonomialMap
    eta_y: ScaledMonomialMap
    xi_tail: ScaledMonomialMap
    eta_tail: ScaledMonomialMap
    z_rows: tuple
    xi_z: ScaledMonomialMap
    eta_z: ScaledMonomialMap
    w_rows: tuple | None = None
    eta_w: ScaledMonomialMap | None = None
    eta_ext: ScaledMonomialMap | None = None
    big_w_rows: tuple | None = None
    eta_big_w: ScaledMonomialMap | None = None

    def y_names(self):
        return default_variables(self.n, "y")

    def tail_names(self):
        return default_variables(self.n - 1, "y", 1)

    def z_names(self):
        return default_variables(self.n - 1, "z", 1)

    def w_names(self):
        return default_variables(self.n - 1, "wv", 1)

    def ext_names(self):
        return self.w_names() + ("u",)

    def big_w_names(self):
        return default_variables(self.n, "W", 1)

    # x-exponent rows of each coordinate system
    def tail_in_y(self):
        return [tuple(int(i == k + 1) for i in range(self.n)) for k in range(self.n - 1)]

    def tail_x(self):
        return _lift(self.tail_in_y(), self.y_rows)

    def z_x(self):
        return _lift(self.z_rows, self.tail_x())

    def w_x(self):
        return _lift(self.w_rows, self.z_x())


@lru_cache(maxsize=None)
def tower_data(n: int) -> TowerData:
    """All coordinate changes and residual actions of the tower (n >= 2)."""
    if n < 2:
        raise ValueError("the tower needs n >= 2")
    act = schrodinger(n)
    lam = commutator(n)
    yr = tuple(y_rows(n))
    xi_y = induced_action(act.xi, yr)
    eta_y = induced_action(act.eta, yr)
    tail = list(range(1, n))
    xi_tail = restrict_action(xi_y, tail)
    eta_tail = restrict_action(eta_y, tail)
    zr = tuple(z_rows(n))
    xi_z = induced_action(xi_tail, zr)
    eta_z = induced_action(eta_tail, zr)
    extra = {}
    if n >= 3:
        d = n - 1
        cur = tuple(int(i == 1) for i in range(d))  # z_2
        wr = []
        for _ in range(d):
            wr.append(cur)
            cur = eta_z.image_exponent(cur)
        wr = tuple(wr)
        eta_w = induced_action(eta_z, wr)
        # adjoin u: eta(u) = u * w_1
        ext = [list(r) + [0] for r in eta_w.matrix] + [[0] * d + [1]]
        ext[0][d] = 1
        eta_ext = ScaledMonomialMap.from_phases(ext, list(eta_w.phases) + [0])
        bw = tuple(tuple([1] * i + [0] * (d - i) + [1]) for i in range(n))
        extra = dict(w_rows=wr, eta_w=eta_w, eta_ext=eta_ext, big_w_rows=bw,
                     eta_big_w=induced_action(eta_ext, bw))
    return TowerData(n, act.xi, act.eta, lam, yr, xi_y, eta_y, xi_tail, eta_tail, zr, xi_z, eta_z, **extra)


# ---------------------------------------------------------------------------
# steps


def lambda_step(n: int) -> TowerStep:
    """C(x)^<lambda> = C(y_0, ..., y_{n-1})."""
    t = tower_data(n)
    action = diagonal_action_of([t.lam])
    verdict = verify_generating_set(action, t.y_rows)
    inv = invariant_character_lattice(action)
    step = TowerStep("lambda_step", "lattice")
    step.checks["commutator_is_scalar"] = t.lam.is_scalar()
    step.checks["commutator_order_n"] = order_of(t.lam) == n
    step.checks["y_rows_generate_lambda_invariants"] = bool(verdict)
    index = inv.determinant()
    step.checks["y_lattice_index_n"] = index == n
    step.checks["eta_y_order_n"] = order_of(t.eta_y) == n
    step.checks["consistent_with_x_action"] = (
        _consistent(t.xi, t.y_rows, t.xi_y) and _consistent(t.eta, t.y_rows, t.eta_y))
    step.witness = {
        "commutator_phase": _phase_str(t.lam.phases[0]),
        "lambda_characters": list(action.generators[0][1]),
        "candidate_rows": [list(r) for r in t.y_rows],
        "invariant_lattice_hnf": [list(r) for r in inv.basis],
        "candidate_hnf": [list(r) for r in Lattice.from_rows(t.y_rows).basis],
        "index": index,
        "verdict": verdict.kind,
    }
    names = t.y_names()
    step.residual = {"xi": describe_map(t.xi_y, names), "eta": describe_map(t.eta_y, names)}
    return step


def xi_character_on_y(n: int) -> int:
    """k with xi(y_i) = omega^k y_i (i >= 1), as computed."""
    t = tower_data(n)
    return int(t.xi_tail.phases[0] * n) % n


def tail_reduction(n: int) -> TowerStep:
    """xi, eta preserve C(y_1, ..., y_{n-1}); sufficiency is cited."""
    t = tower_data(n)
    step = TowerStep("tail_reduction", "field_reduction", citation=CITE_CHU_KANG_REDUCTION)
    y0_free = {}
    for label, m in (("xi", t.xi_y), ("eta", t.eta_y)):
        for j in range(1, n):
            y0_free[f"{label}(y{j})"] = m.column(j)[0] == 0
    step.checks["tail_images_free_of_y0"] = all(y0_free.values())
    step.checks["eta_y0_involves_y0"] = t.eta_y.column(0)[0] != 0
    step.checks["xi_diagonal_on_tail"] = t.xi_tail.matrix == ScaledMonomialMap.identity(n - 1).matrix
    k = xi_character_on_y(n)
    step.checks["xi_character_primitive"] = n == 1 or Fraction(k, n).denominator == n
    step.checks["eta_tail_order_n"] = order_of(t.eta_tail) == n
    step.witness = {
        "y0_exponent_free": y0_free,
        "eta_y0_image": describe_map(t.eta_y, t.y_names())[0],
        "xi_character_on_tail": k,
    }
    names = t.tail_names()
    step.residual = {"xi": describe_map(t.xi_tail, names), "eta": describe_map(t.eta_tail, names)}
    return step


def xi_step(n: int) -> TowerStep:
    """C(y_1, ..., y_{n-1})^<xi> = C(z_1, ..., z_{n-1})."""
    t = tower_data(n)
    action = diagonal_action_of([t.xi_tail])
    verdict = verify_generating_set(action, t.z_rows)
    inv = invariant_character_lattice(action)
    step = TowerStep("xi_step", "lattice")
    step.checks["z_rows_generate_xi_invariants"] = bool(verdict)
    index = inv.determinant()
    step.checks["z_lattice_index_n"] = index == n
    step.checks["xi_trivial_on_z"] = t.xi_z.is_identity()
    step.checks["eta_z_order_n"] = order_of(t.eta_z) == n
    step.checks["consistent_with_x_action"] = (
        _consistent(t.xi, t.z_x(), t.xi_z) and _consistent(t.eta, t.z_x(), t.eta_z))
    step.witness = {
        "xi_characters": list(action.generators[0][1]),
        "candidate_rows": [list(r) for r in t.z_rows],
        "invariant_lattice_hnf": [list(r) for r in inv.basis],
        "index": index,
        "verdict": verdict.kind,
        "eta_z": _map_dict(t.eta_z),
    }
    step.residual = {"eta": describe_map(t.eta_z, t.z_names())}
    step.notes.append("comparison with the action of tau in chu-kang p. 686 is not machine-checkable; "
                      "computed action recorded")
    return step


def w_step(n: int) -> TowerStep:
    """C(z) = C(w) with eta cycling w_1 -> ... -> w_{n-1} -> (w_1 ... w_{n-1})^-1."""
    if n < 3:
        raise ValueError("w_step needs n >= 3 (w_1 := z_2 must exist)")
    t = tower_data(n)
    d = n - 1
    step = TowerStep("w_step", "monomial_change")
    det_w = det(t.w_rows)
    step.checks["w_change_unimodular"] = abs(det_w) == 1
    wn = t.w_names()
    shifts = all(
        pullback(_monomial([int(k == i) for k in range(d)], wn), t.eta_w)
        == _monomial([int(k == i + 1) for k in range(d)], wn)
        for i in range(d - 1)
    )
    step.checks["eta_shifts_w"] = shifts
    last = pullback(_monomial([int(k == d - 1) for k in range(d)], wn), t.eta_w)
    target = _monomial([-1] * d, wn)
    step.checks["eta_last_w_is_inverse_product"] = last == target
    # the same identity read in z-coordinates
    zn = t.z_names()
    last_z = pullback(_monomial(t.w_rows[-1], zn), t.eta_z)
    prod_inv = _monomial([-sum(r[i] for r in t.w_rows) for i in range(d)], zn)
    step.checks["identity_in_z_coordinates"] = last_z == prod_inv
    step.checks["eta_w_order_n"] = order_of(t.eta_w) == n
    step.checks["consistent_with_x_action"] = _consistent(t.eta, t.w_x(), t.eta_w)
    step.witness = {
        "w_rows_over_z": [list(r) for r in t.w_rows],
        "det": det_w,
        "eta_last": f"eta({wn[-1]}) = {render(last)}",
        "w_rows_over_x": [list(r) for r in t.w_x()],
    }
    step.residual = {"eta": describe_map(t.eta_w, wn)}
    return step


def linearize_step(n: int) -> TowerStep:
    """Adjoin u with eta(u) = u w_1; W_i = u w_1 ... w_{i-1} are permuted cyclically."""
    t = tower_data(n)
    step = TowerStep("linearize_step", "linear_change", citation=CITE_CHU_KANG_LINEARIZE)
    names = t.ext_names()
    W = [_monomial(r, names) for r in t.big_w_rows]
    images = [pullback(Wi, t.eta_ext) for Wi in W]
    step.checks["eta_W_shift"] = all(images[i] == W[i + 1] for i in range(n - 1))
    step.checks["eta_W_last_is_W1"] = images[-1] == W[0]
    step.checks["W_change_unimodular"] = is_unimodular(t.big_w_rows)
    cyc = [[int(i == (j + 1) % n) for j in range(n)] for i in range(n)]
    step.checks["eta_is_pure_cyclic_permutation"] = (
        t.eta_big_w.matrix == tuple(map(tuple, cyc)) and not any(t.eta_big_w.phases))
    step.checks["eta_extended_order_n"] = order_of(t.eta_ext) == n
    change, action = diagonalize_cyclic_permutation(n)
    step.checks["fourier_conjugation_exact"] = check_shift_diagonalization(change, action)
    step.witness = {
        "extension": "eta(u) = u*wv1",
        "W_rows_over_wu": [list(r) for r in t.big_w_rows],
        "eta_W_last": f"eta(W{n}) = {render(images[-1])} = W1",
        "fourier": f"u_j = sum_i z{{{n}}}^(i*j) * W_(i+1)",
        "diagonal_characters": list(action.generators[0][1]),
    }
    step.residual = {"eta": describe_map(t.eta_big_w, t.big_w_names()),
                     "eta_on_u": [_diag_line(n, j) for j in range(n)]}
    step.notes.append("descent from C(w)(u) and equivalence with the cited linearization are not machine-checked")
    return step


def _diag_line(n: int, j: int) -> str:
    k = -j % n
    if k == 0:
        return f"u{j} -> u{j}"
    return f"u{j} -> z{{{n}}}^{k}*u{j}"


def fischer_step(n: int) -> TowerStep:
    """Invariant monomials of the terminal diagonal Z/n action on u_0 .. u_{n-1}."""
    _, action = diagonalize_cyclic_permutation(n)
    gens = fischer_generators(action)
    step = TowerStep("fischer_step", "lattice", citation=CITE_FISCHER)
    step.checks["generators_fixed"] = all(action.fixes(r) for r in gens.rows)
    step.checks["generators_generate"] = bool(verify_generating_set(action, gens.rows))
    index = gens.lattice.determinant()
    order = subgroup_order(action)
    step.checks["index_equals_character_image_order"] = index == order
    step.witness = {
        "characters": list(action.generators[0][1]),
        "modulus": action.generators[0][0],
        "generators": [list(r) for r in gens.rows],
        "index": index,
        "character_image_order": order,
    }
    return step


def trivial_case_step(n: int) -> TowerStep:
    step = TowerStep("trivial_case", "citation", citation=CITE_TRIVIAL)
    step.checks["n_at_most_3"] = n <= 3
    step.witness = {"n": n}
    return step


def _discrepancies(n: int) -> list[str]:
    out = []
    k = xi_character_on_y(n)
    if k != 1 % n:
        out.append(f"xi acts on y_i (i >= 1) by omega^{k} (computed); the stated action is omega^1. "
                   "Both are primitive n-th roots; the lattice computations agree.")
    return out


def build_certificate(n: int) -> RationalityCertificate:
    """Run every applicable step and collect the results."""
    if n < 2:
        raise ValueError("certificates are built for n >= 2")
    notes = []
    steps: list[TowerStep] = []
    if n == 2:
        steps.append(trivial_case_step(n))
        notes.append("w_1 := z_2 does not exist for n = 2; the tower stops after xi_step")
        builders = [lambda_step, tail_reduction, xi_step]
    else:
        builders = [lambda_step, tail_reduction, xi_step, w_step, linearize_step, fischer_step]
        if n == 3:
            notes.append(f"n = 3 is also covered by the trivial case ({CITE_TRIVIAL}); the full tower is run anyway")
    for build in builders:
        try:
            steps.append(build(n))
        except Exception as exc:  # recorded as a failed step with the error as witness
            steps.append(TowerStep(build.__name__, "error", checks={"completed": False},
                                   witness={"error": f"{type(exc).__name__}: {exc}"}))
            break
        if not steps[-1].passed:
            break
    t = tower_data(n)
    notes.append(f"commutator xi*eta*xi^-1*eta^-1 realizes as scalar z{{{n}}}^{int(t.lam.phases[0] * n)}"
                 " (product g*h = pull back by g, then by h)")
    return RationalityCertificate(n, steps, _discrepancies(n), notes)


# ---------------------------------------------------------------------------
# projective factorization shadow


@dataclass
class ProjectiveTowerReport:
    n: int
    checks: dict[str, bool]
    witness: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {"n": self.n, "checks": dict(self.checks), "witness": self.witness, "passed": self.passed}


def projective_tower(n: int) -> ProjectiveTowerReport:
    """Degree-0 character lattice (x_i / x_0): lambda trivial, xi diagonal, xi-invariants of index n."""
    if n < 2:
        raise ValueError("projective tower needs n >= 2")
    act = schrodinger(n)
    rows = [tuple(1 if k == i else -1 if k == 0 else 0 for k in range(n)) for i in range(1, n)]
    xi0 = induced_action(act.xi, rows)
    eta0 = induced_action(act.eta, rows)
    lam0 = induced_action(commutator(n), rows)
    checks = {"lambda_trivial": lam0.is_identity()}
    checks["xi_diagonal"] = xi0.matrix == ScaledMonomialMap.identity(n - 1).matrix
    action = diagonal_action_of([xi0])
    inv = invariant_character_lattice(action)
    index = inv.determinant()
    checks["xi_invariant_index_n"] = index == n
    eta_inv = induced_action(eta0, inv.basis)  # raises if not stable
    checks["eta_descends"] = True
    eta_order = order_of(eta_inv)
    checks["eta_order_n"] = eta_order == n
    # eta normalizes <xi> on ratios: eta xi eta^-1 is a power of xi
    checks["eta_order_on_ratios_n"] = order_of(eta0) == n
    witness = {
        "xi_characters": list(action.generators[0][1]),
        "invariant_lattice_hnf": [list(r) for r in inv.basis],
        "index": index,
        "eta_order": eta_order,
        "eta_on_invariants": _map_dict(eta_inv),
    }
    return ProjectiveTowerReport(n, checks, witness)

"""Property batteries over actions, modules, extensions and semigroups, reported as named checks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .actions import (
    ExtensionByG,
    TwistedPartialAction,
    crossed_product_action,
    refine_extension,
    tau_rho_correspondence,
    tpas_equivalent,
)
from .correspondence import (
    admissible_to_crossed_product,
    lambda_from_theta,
    phi_equivalence,
    roundtrip_lambda,
    roundtrip_theta,
)
from .errors import TpactError, format_witness
from .modules import (
    ExtensionByS,
    TwistedSModule,
    crossed_product_module,
    is_order_preserving,
    is_sieben,
    module_from_extension,
    transversal_count,
    transversals,
)
from .semigroup import (
    DEFAULT_ISO_CAP,
    FiniteSemigroup,
    group_congruences,
    find_isomorphism,
    inverse_structure,
    is_e_unitary,
    sigma_congruence,
)

SIGMA_BRUTE_MAX = 8
TRANSVERSAL_MAX = 200


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: Optional[tuple] = None
    note: str = ""

    def line(self):
        if self.passed:
            return f"CHECK {self.name}: PASS"
        w = format_witness(self.witness if self.witness is not None else ())
        extra = f" ({self.note})" if self.note else ""
        return f"CHECK {self.name}: FAIL witness={w}{extra}"


@dataclass
class Caps:
    iso: int = DEFAULT_ISO_CAP
    witness: int = 10**6
    mult: int = 10


def run(name, fn: Callable[[], Optional[tuple]]):
    """Evaluate ``fn``; None means pass, a tuple is a failure witness, errors fail with their witness."""
    try:
        wit = fn()
    except TpactError as exc:
        w = exc.witness if isinstance(exc.witness, tuple) else ((exc.witness,) if exc.witness is not None else ())
        return Check(name, False, w, str(exc).split(" witness=")[0])
    if wit is None:
        return Check(name, True)
    return Check(name, False, tuple(wit))


def _normalized(labels):
    relabel = {}
    return tuple(relabel.setdefault(x, len(relabel)) for x in labels)


def _first(seq):
    return next(iter(seq), None)


# ---------------------------------------------------------------------------
# inverse-semigroup axioms, checked without trusting the constructor


def inverse_axiom_witness(U):
    """None, or a witness against associativity, unique inverses or commuting idempotents."""
    t = U.table
    n = len(t)
    for a in range(n):
        for b in range(n):
            ab = t[a][b]
            for c in range(n):
                if t[ab][c] != t[a][t[b][c]]:
                    return ("assoc", a, b, c)
    for a in range(n):
        invs = [b for b in range(n) if t[t[a][b]][a] == a and t[t[b][a]][b] == b]
        if len(invs) != 1:
            return ("inverse", a, len(invs))
    idem = [e for e in range(n) if t[e][e] == e]
    for e in idem:
        for f in idem:
            if t[e][f] != t[f][e]:
                return ("idempotents", e, f)
    return None


def inverse_formula_witness(T, cp):
    """(sδ_x)⁻¹ = w⁻¹_{x⁻¹,x}θ_{x⁻¹}(s⁻¹)δ_{x⁻¹}, compared with the table inverse."""
    A, G, U = T.A, T.G, cp.U
    for k, (s, x) in enumerate(cp.pairs):
        xi = G.inv[x]
        b = T.w_inv[(xi, x)].left[T.theta[xi][A.inv[s]]]
        if cp.index[(b, xi)] != U.inv[k]:
            return (s, x)
    return None


def sigma_minimality_witness(S):
    """σ ⊆ every group congruence, by brute-force congruence enumeration."""
    sig = sigma_congruence(S)
    groups = group_congruences(S, cap=SIGMA_BRUTE_MAX)
    if not any(c.same_partition(sig) for c in groups):
        return ("sigma-not-a-group-congruence",)
    for c in groups:
        if not c.contains(sig):
            return next((a, b) for cls in sig.classes for a in cls for b in cls if not c.related(a, b))
    return None


# ---------------------------------------------------------------------------
# batteries


def action_battery(T: TwistedPartialAction, prefix="", caps=None):
    caps = caps or Caps()
    p = f"{prefix}:" if prefix else ""
    out = []
    box = {}

    def build():
        box["cp"] = crossed_product_action(T)
        return None

    out.append(run(p + "crossed-product", build))
    if "cp" not in box:
        return out
    cp = box["cp"]
    out.append(run(p + "crossed-inverse-axioms", lambda: inverse_axiom_witness(cp.U)))
    out.append(run(p + "crossed-inverse-formula", lambda: inverse_formula_witness(T, cp)))

    def refinement():
        ref = refine_extension(cp.extension)
        if not is_e_unitary(ref.S):
            return ("e-unitary",)
        sig = sigma_congruence(ref.S)
        if sig.class_of != _normalized(ref.kappa.map):
            return ("ker-kappa",)
        if find_isomorphism(ref.S.base, cp.S.base, cap=caps.iso) is None:
            return ("iso",)
        return None

    out.append(run(p + "refinement", refinement))

    def rt_theta():
        rep = roundtrip_theta(T)
        return None if rep.verdict else _first(w for _, w in rep.failures())

    out.append(run(p + "roundtrip-theta", rt_theta))

    def rt_lambda():
        rep = roundtrip_lambda(lambda_from_theta(T))
        return None if rep.verdict else _first(w for _, w in rep.failures())

    out.append(run(p + "roundtrip-lambda", rt_lambda))
    out.append(run(p + "phi-equivalence", lambda: (phi_equivalence(lambda_from_theta(T)), None)[1]))

    def admissible():
        res = admissible_to_crossed_product(cp.extension)
        if res.action.same_as(T):
            return None
        v = tpas_equivalent(T, res.action, cap=caps.witness, mult_cap=caps.mult)
        return None if v else ("not-equivalent",)

    out.append(run(p + "admissible-recovers-action", admissible))
    return out


def module_battery(mod: TwistedSModule, prefix="", caps=None):
    p = f"{prefix}:" if prefix else ""
    out = [Check(p + "module-axioms", True)]
    out.append(run(p + "crossed-inverse-axioms", lambda: inverse_axiom_witness(crossed_product_module(mod).U)))
    if not is_e_unitary(mod.S) or not is_sieben(mod):
        return out

    def rt():
        rep = roundtrip_lambda(mod)
        return None if rep.verdict else _first(w for _, w in rep.failures())

    out.append(run(p + "roundtrip-lambda", rt))
    out.append(run(p + "phi-equivalence", lambda: (phi_equivalence(mod), None)[1]))
    return out


def sieben_order_witness(ext):
    """Sieben(module_from_extension(ρ)) ⟺ ρ order-preserving over every transversal."""
    for r in transversals(ext, cap=TRANSVERSAL_MAX):
        if bool(is_sieben(module_from_extension(ext, r))) != is_order_preserving(ext, r):
            return tuple(r.rho)
    return None


def extension_battery(ext, prefix="", caps=None):
    caps = caps or Caps()
    p = f"{prefix}:" if prefix else ""
    out = []
    if isinstance(ext, ExtensionByS):
        if transversal_count(ext) <= TRANSVERSAL_MAX:
            out.append(run(p + "sieben-iff-order-preserving", lambda: sieben_order_witness(ext)))
        out.append(run(p + "inverse-axioms", lambda: inverse_axiom_witness(ext.U)))
        return out
    out.append(run(p + "refinement", lambda: (refine_extension(ext), None)[1]))
    out.append(run(p + "tau-rho-correspondence", lambda: (tau_rho_correspondence(ext, cap=caps.witness), None)[1]))

    def adm():
        res = admissible_to_crossed_product(ext)
        return None if res.mu.is_bijective() else ("mu",)

    out.append(run(p + "admissible-equivalence", adm))
    return out


def semigroup_battery(S, prefix="", caps=None):
    p = f"{prefix}:" if prefix else ""
    out = []
    box = {}

    def inv():
        box["S"] = inverse_structure(S)
        return None

    out.append(run(p + "inverse", inv))
    if "S" in box and S.n <= SIGMA_BRUTE_MAX:
        out.append(run(p + "sigma-minimal", lambda: sigma_minimality_witness(box["S"])))
    return out


def battery_for(obj, prefix="", caps=None):
    if isinstance(obj, TwistedPartialAction):
        return action_battery(obj, prefix, caps)
    if isinstance(obj, TwistedSModule):
        return module_battery(obj, prefix, caps)
    if isinstance(obj, (ExtensionByG, ExtensionByS)):
        return extension_battery(obj, prefix, caps)
    if isinstance(obj, FiniteSemigroup):
        return semigroup_battery(obj, prefix, caps)
    raise TypeError(f"no battery for {type(obj).__name__}")

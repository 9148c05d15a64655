# deduction/systems.py - axiom systems, schema generators and the system registry
import logging
import threading
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from errors import CaptureError, RegistryError, SchemaError
from deduction import axioms as ax
from language.coding import pretty
from language.syntax import atom, is_formula, is_sentence, numeral, relation_arity

logger = logging.getLogger(__name__)

RULES = ("NEC_T", "CONEC_T", "NEC_K", "T_OVER_K")

FIRST_ORDER_LOGIC = (
    "Q1  forall x A -> A[t/x]            (t free for x)",
    "Q2  A[t/x] -> exists x A            (t free for x)",
    "Q3  forall x (B -> A) -> (B -> forall x A)   (x not free in B)",
    "Q4  forall x (A -> B) -> (exists x A -> B)   (x not free in B)",
    "E1  t = t",
    "E2  s = t -> (A -> B)               (A atomic, B replaces some s by t)",
    "taut  propositional tautologies, decided",
    "comp  tautologies after computing closed dotted terms",
    "MP, UG, hyp/ded with dependency tracking",
)


# ==================== Schemata ====================

_KINDS = {
    "formula": is_formula,
    "sentence": is_sentence,
    "variable": lambda p: isinstance(p, str) and relation_arity(p) is None,
    "relation": lambda p: isinstance(p, str),
}


@dataclass(frozen=True)
class SchemaGenerator:
    """Parameterized axiom producer; the kernel regenerates instances and compares"""
    schema_id: str
    build: Callable
    kinds: Tuple[str, ...]
    description: str = ""

    def instantiate(self, *params):
        if len(params) != len(self.kinds):
            raise SchemaError(f"{self.schema_id} takes {len(self.kinds)} parameter(s), got {len(params)}")
        for kind, param in zip(self.kinds, params):
            if not _KINDS[kind](param):
                raise SchemaError(f"{self.schema_id}: parameter {param!s} is not a {kind}")
        try:
            instance = self.build(*params)
        except CaptureError as e:
            raise SchemaError(f"{self.schema_id}: {e}") from None
        if not is_sentence(instance):
            raise SchemaError(f"{self.schema_id} produced an open formula")
        return instance


INDUCTION = SchemaGenerator("IND", ax.induction, ("formula", "variable"),
                            "induction over any formula of the full language")
ATOMIC_TRUTH = SchemaGenerator("UCT-Atom", ax.atomic_truth, ("relation",),
                               "T(R(t1..)) <-> R(t1°..) for R in =, U, Ag")
UT_K = SchemaGenerator("UT^K", ax.untyped_truth_of_knowledge, ("sentence",), "K(<phi>) -> phi")
K_UT_K = SchemaGenerator("K[UT^K]", ax.known_untyped_truth, ("sentence",), "K(<K(<phi>) -> phi>)")
I_K = SchemaGenerator("I^K", ax.knowledge_of_consequences, ("sentence", "sentence"),
                      "(Pr_PA(<phi -> psi>) & K(<phi>)) -> K(<psi>)")
TB = SchemaGenerator("TB", ax.disquotation, ("sentence",), "T(<phi>) <-> phi")


def instantiate(system: "SystemDef", schema_id: str, *params):
    if schema_id not in system.schemata:
        raise SchemaError(f"{system.name} has no schema {schema_id}")
    return system.schemata[schema_id].instantiate(*params)


def induction_instance(phi, var: str = "v"):
    return INDUCTION.instantiate(phi, var)


# ==================== Systems ====================

@dataclass(frozen=True)
class SystemDef:
    name: str
    axioms: Mapping[str, object] = field(default_factory=dict)
    schemata: Mapping[str, SchemaGenerator] = field(default_factory=dict)
    rules: FrozenSet[str] = frozenset()
    budget: Optional[int] = None
    ancestors: FrozenSet[str] = frozenset()
    label: str = ""
    # NEC_K concludes K1(<phi>) instead of forall a in Ag K2(a, <phi>)
    collective_knowledge: bool = False
    description: str = ""

    def extend(self, name: str, axioms: Optional[Mapping] = None, schemata: Iterable[SchemaGenerator] = (),
               rules: Iterable[str] = (), budget: Optional[int] = None, label: str = "",
               collective_knowledge: Optional[bool] = None, description: str = "") -> "SystemDef":
        return SystemDef(
            name=name,
            axioms={**self.axioms, **(axioms or {})},
            schemata={**self.schemata, **{s.schema_id: s for s in schemata}},
            rules=self.rules | frozenset(rules),
            budget=budget,
            ancestors=self.ancestors | {self.name},
            label=label or name,
            collective_knowledge=self.collective_knowledge if collective_knowledge is None else collective_knowledge,
            description=description,
        )

    def combine(self, other: "SystemDef", name: str, **kwargs) -> "SystemDef":
        """Extension of both self and other"""
        union = replace(self, axioms={**self.axioms, **other.axioms},
                        schemata={**self.schemata, **other.schemata},
                        rules=self.rules | other.rules,
                        ancestors=self.ancestors | other.ancestors | {other.name})
        return union.extend(name, **kwargs)

    def extends(self, other: str) -> bool:
        return other == self.name or other in self.ancestors

    def has_rule(self, rule: str) -> bool:
        return rule in self.rules

    def axiom(self, name: str):
        if name not in self.axioms:
            raise RegistryError(f"{self.name} has no axiom {name}")
        return self.axioms[name]

    def manifest(self) -> str:
        lines = [f"system {self.name}" + (f"  ({self.label})" if self.label != self.name else "")]
        if self.description:
            lines.append(f"  {self.description}")
        if self.ancestors:
            lines.append(f"  extends: {', '.join(sorted(self.ancestors))}")
        lines.append("  axioms:")
        lines.extend(f"    {name}: {pretty(formula)}" for name, formula in self.axioms.items())
        lines.append("  schemata:")
        lines.extend(f"    {s.schema_id}: {s.description}" for s in self.schemata.values())
        lines.append(f"  rules: {', '.join(sorted(self.rules)) or 'MP, UG only'}")
        if self.budget is not None:
            lines.append(f"  budget: at most {self.budget} NEC_T/CONEC_T application(s) per proof")
        if self.collective_knowledge:
            lines.append("  knowledge reading: collective K1")
        lines.append("  logic:")
        lines.extend(f"    {line}" for line in FIRST_ORDER_LOGIC)
        return "\n".join(lines)


# ==================== Registry ====================

class SystemRegistry:
    """Systems by name; written while the builtins are assembled, then read"""

    def __init__(self):
        self._systems: Dict[str, SystemDef] = {}
        self._lock = threading.Lock()

    def register(self, system: SystemDef) -> SystemDef:
        with self._lock:
            if system.name in self._systems:
                raise RegistryError(f"system {system.name} is already registered")
            self._systems[system.name] = system
        logger.debug(f"registered {system.name} with {len(system.axioms)} axiom(s)")
        return system

    def get(self, name: str) -> SystemDef:
        if name.startswith("BEFS_") and name not in self._systems:
            suffix = name[len("BEFS_"):]
            if suffix.isdigit():
                return self.befs(int(suffix))
        try:
            return self._systems[name]
        except KeyError:
            raise RegistryError(f"unknown system {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._systems

    def names(self) -> List[str]:
        return list(self._systems)

    def befs(self, n: int) -> SystemDef:
        """The pseudo-system BEFS_n, created on first request"""
        if n < 0:
            raise RegistryError(f"BEFS_n needs n >= 0, got {n}")
        name = f"BEFS_{n}"
        with self._lock:
            if name in self._systems:
                return self._systems[name]
        base, befs = self.get("Base"), self.get("BEFS")
        if n == 0:
            system = replace(base, name=name, ancestors=frozenset({"Base"}), label="PA(L)",
                             description="defined as Base")
        elif n == 1:
            system = replace(befs, name=name, axioms={**befs.axioms, **ax.parse_axioms(ax.ARITHMETIC_REFLECTION)},
                             rules=frozenset({"T_OVER_K"}), budget=0, ancestors=frozenset({"Base", "UCT"}),
                             label=name, description="BEFS axioms with R^T and the rule T/K")
        else:
            lower = frozenset(f"BEFS_{k}" for k in range(2, n))
            system = replace(befs, name=name, budget=n - 1, ancestors=frozenset({"Base", "UCT"}) | lower,
                             label=name, description=f"BEFS with at most {n - 1} NEC_T/CONEC_T application(s)")
        with self._lock:
            return self._systems.setdefault(name, system)


def builtin_systems(registry: Optional[SystemRegistry] = None) -> SystemRegistry:
    from language.diagonal import make_self_ref_system

    registry = registry or SystemRegistry()
    parse = ax.parse_axioms

    base = registry.register(SystemDef(
        name="Base",
        axioms={**parse(ax.PA_AXIOMS), **parse(ax.REPRESENTATION_AXIOMS)},
        schemata={INDUCTION.schema_id: INDUCTION},
        label="PA(L)",
        description="Peano arithmetic with induction over the full language",
    ))
    uct = registry.register(base.extend("UCT", parse(ax.COMPOSITIONAL_TRUTH_AXIOMS), schemata=(ATOMIC_TRUTH,),
                                        description="untyped compositional truth"))
    fs = registry.register(uct.extend("FS", rules=("NEC_T", "CONEC_T"), description="Friedman-Sheard truth"))
    dcb = registry.register(make_self_ref_system(
        base.extend("DCB", parse(ax.BELIEF_AXIOMS), description="deductively closed belief"),
        {"R_DCB": ax.REFLECTION_TEMPLATE},
    ))
    kt = registry.register(dcb.combine(fs, "KT", axioms=parse(ax.VERACITY_AXIOM), rules=("NEC_K",),
                                       description="knowledge and truth"))
    registry.register(fs.extend("BEFS", {**parse(ax.BELIEF_AXIOMS), **parse(ax.EPISTEMIC_AXIOMS),
                                         **parse({n: ax.SUPPLEMENTARY_AXIOMS[n] for n in ("UBF^K", "IA")})},
                                rules=("T_OVER_K",), description="basic epistemic Friedman-Sheard"))

    registry.register(base.extend("KM", schemata=(UT_K, K_UT_K, I_K), collective_knowledge=True,
                                  label="PA+UT^K+K[UT^K]+I^K"))
    registry.register(base.extend("Montague", schemata=(UT_K,), rules=("NEC_K",), collective_knowledge=True,
                                  label="PA+UT^K+NEC^K"))

    supplementary = parse(ax.SUPPLEMENTARY_AXIOMS)
    kt_ia = registry.register(kt.extend("KT+IA", {"IA": supplementary["IA"]}))
    registry.register(kt_ia.extend("KT+IA+Ag(0)", {"Ag(0)": atom("Ag", numeral(0))}))
    registry.register(kt.extend("KT+U4", {"U4": supplementary["U4"]}))
    kt_ubf_ia = registry.register(kt.extend("KT+UBF+IA", {n: supplementary[n] for n in ("UBF^K", "IA")}))
    kt_in_plus = registry.register(kt_ubf_ia.extend("KT+UBF+IA+In+", {"In+": supplementary["In+"]}))
    registry.register(kt_in_plus.extend("KT+UBF+IA+In+In-", {"In-": supplementary["In-"]}))
    registry.register(registry.get("BEFS").extend(
        "BEFS+V+R_DCB", {**parse(ax.VERACITY_AXIOM), "R_DCB": dcb.axiom("R_DCB")}))

    for n in range(4):
        registry.befs(n)
    logger.info(f"✅ {len(registry.names())} builtin systems registered")
    return registry


_default_registry: Optional[SystemRegistry] = None
_default_lock = threading.Lock()


def default_registry() -> SystemRegistry:
    """Process-wide registry of the builtin systems"""
    global _default_registry
    if _default_registry is None:
        with _default_lock:
            if _default_registry is None:
                _default_registry = builtin_systems()
    return _default_registry

# revision/frames.py - agency frames over the standard model of arithmetic
#
# Worlds share the arithmetic part and differ only in finite-support tables
# for U (default false) and u (default 0). Each agent has an accessibility
# relation stored as a boolean |W| x |W| matrix.
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from errors import FrameError

logger = logging.getLogger(__name__)

PROPERTIES = ("reflexive", "transitive", "euclidean", "left-total")


def _compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


def is_reflexive(r: np.ndarray) -> bool:
    return bool(np.all(np.diag(r)))


def is_transitive(r: np.ndarray) -> bool:
    """R;R is contained in R"""
    return not bool(np.any(_compose(r, r) & ~r))


def is_euclidean(r: np.ndarray) -> bool:
    """w R v and w R u give v R u, i.e. R^-1;R is contained in R"""
    return not bool(np.any(_compose(r.T, r) & ~r))


def is_left_total(r: np.ndarray) -> bool:
    return bool(np.all(r.any(axis=1)))


_DETECTORS = {
    "reflexive": is_reflexive,
    "transitive": is_transitive,
    "euclidean": is_euclidean,
    "left-total": is_left_total,
}


@dataclass
class AgencyFrame:
    agents: Tuple[int, ...]
    worlds: Tuple[str, ...]
    relations: Dict[int, np.ndarray]
    U: Dict[str, FrozenSet[int]] = field(default_factory=dict)
    u: Dict[str, Dict[int, int]] = field(default_factory=dict)
    # system whose theorems seed the intensional evaluation at each world
    seed_systems: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.agents:
            raise FrameError("an agency frame needs at least one agent")
        if not self.worlds or len(set(self.worlds)) != len(self.worlds):
            raise FrameError("worlds must be a non-empty list of distinct ids")
        n = len(self.worlds)
        for alpha in self.agents:
            r = self.relations.get(alpha)
            if r is None:
                raise FrameError(f"agent {alpha} has no accessibility relation")
            r = np.asarray(r, dtype=bool)
            if r.shape != (n, n):
                raise FrameError(f"relation of agent {alpha} has shape {r.shape}, expected {(n, n)}")
            self.relations[alpha] = r
        for table in (self.U, self.u, self.seed_systems):
            unknown = set(table) - set(self.worlds)
            if unknown:
                raise FrameError(f"tables mention unknown worlds {sorted(unknown)}")

    # ==================== Access ====================

    def index(self, world: str) -> int:
        try:
            return self.worlds.index(world)
        except ValueError:
            raise FrameError(f"unknown world {world!r}") from None

    def successors(self, alpha: int, world: str) -> List[str]:
        row = self.relations[alpha][self.index(world)]
        return [self.worlds[j] for j in np.flatnonzero(row)]

    def accessible(self, alpha: int, world: str, other: str) -> bool:
        return bool(self.relations[alpha][self.index(world), self.index(other)])

    def u_map(self, world: str) -> Dict[int, int]:
        return self.u.get(world, {})

    def in_U(self, world: str, n: int) -> bool:
        return n in self.U.get(world, frozenset())

    # ==================== Properties ====================

    def has_property(self, prop: str, alpha: Optional[int] = None) -> bool:
        """Whether every agent's relation (or alpha's) has the property"""
        if prop not in _DETECTORS:
            raise FrameError(f"unknown frame property {prop!r}; known: {', '.join(PROPERTIES)}")
        agents = self.agents if alpha is None else (alpha,)
        return all(_DETECTORS[prop](self.relations[a]) for a in agents)

    def properties(self) -> Dict[str, bool]:
        return {p: self.has_property(p) for p in PROPERTIES}

    def describe(self) -> str:
        held = [p for p, ok in self.properties().items() if ok]
        return (f"{len(self.worlds)} world(s), agents {list(self.agents)}, "
                f"relations {', '.join(held) or 'without special properties'}")

    # ==================== JSON ====================

    @classmethod
    def from_json(cls, data: Mapping) -> "AgencyFrame":
        try:
            agents = tuple(int(a) for a in data["agents"])
            worlds = tuple(str(w) for w in data["worlds"])
            pairs = data["relations"]
        except (KeyError, TypeError, ValueError) as e:
            raise FrameError(f"frame document needs agents, worlds and relations: {e}") from None
        relations = {}
        for alpha in agents:
            r = np.zeros((len(worlds), len(worlds)), dtype=bool)
            for pair in pairs.get(str(alpha), pairs.get(alpha, [])):
                if len(pair) != 2 or pair[0] not in worlds or pair[1] not in worlds:
                    raise FrameError(f"bad accessibility pair {pair!r} for agent {alpha}")
                r[worlds.index(pair[0]), worlds.index(pair[1])] = True
            relations[alpha] = r
        U = {str(w): frozenset(int(n) for n in ns) for w, ns in data.get("U", {}).items()}
        u = {str(w): {int(k): int(v) for k, v in table.items()} for w, table in data.get("u", {}).items()}
        seeds = {str(w): str(s) for w, s in data.get("seed_systems", {}).items()}
        return cls(agents, worlds, relations, U, u, seeds)

    def to_json(self) -> Dict:
        return {
            "agents": list(self.agents),
            "worlds": list(self.worlds),
            "relations": {str(a): [[self.worlds[i], self.worlds[j]] for i, j in zip(*np.nonzero(r))]
                          for a, r in self.relations.items()},
            "U": {w: sorted(ns) for w, ns in self.U.items()},
            "u": {w: {str(k): v for k, v in table.items()} for w, table in self.u.items()},
            "seed_systems": dict(self.seed_systems),
        }


# ==================== Constructors ====================

def _world_ids(n: int) -> Tuple[str, ...]:
    return tuple(f"w{i}" for i in range(n))


def frame_of_kind(kind: str, worlds: int = 3, agents: Sequence[int] = (0, 1), seed_system: str = "DCB",
                  rng: Optional[random.Random] = None) -> AgencyFrame:
    """A frame whose relations are reflexive, reflexive-transitive or equivalences

    Each agent's relation is drawn from rng (or fixed chains without one) and
    then closed to the requested kind.
    """
    if kind not in ("reflexive", "preorder", "equivalence"):
        raise FrameError(f"unknown frame kind {kind!r}")
    n = worlds
    relations = {}
    for k, alpha in enumerate(agents):
        r = np.eye(n, dtype=bool)
        if rng is None:
            for i in range(n - 1):
                if (i + k) % 2 == 0:
                    r[i, i + 1] = True
        else:
            r |= np.array([[rng.random() < 0.35 for _ in range(n)] for _ in range(n)], dtype=bool)
        if kind == "equivalence":
            r |= r.T
        if kind in ("preorder", "equivalence"):
            r = transitive_closure(r)
        relations[alpha] = r
    ids = _world_ids(n)
    U = {w: frozenset({i}) for i, w in enumerate(ids)}
    return AgencyFrame(tuple(agents), ids, relations, U=U, seed_systems={w: seed_system for w in ids})


def transitive_closure(r: np.ndarray) -> np.ndarray:
    closed = r.copy()
    while True:
        step = closed | _compose(closed, closed)
        if np.array_equal(step, closed):
            return closed
        closed = step


def random_frame(rng: random.Random, worlds: int, agents: Sequence[int] = (0, 1),
                 properties: Iterable[str] = ()) -> AgencyFrame:
    """A random frame with at least the requested properties"""
    properties = set(properties)
    unknown = properties - set(PROPERTIES)
    if unknown:
        raise FrameError(f"unknown frame properties {sorted(unknown)}")
    relations = {}
    for alpha in agents:
        r = np.array([[rng.random() < 0.4 for _ in range(worlds)] for _ in range(worlds)], dtype=bool)
        if "reflexive" in properties:
            r |= np.eye(worlds, dtype=bool)
        if "left-total" in properties:
            for i in np.flatnonzero(~r.any(axis=1)):
                r[i, rng.randrange(worlds)] = True
        if "euclidean" in properties:
            # symmetric and transitive, so also Euclidean
            r = transitive_closure(r | r.T)
        elif "transitive" in properties:
            r = transitive_closure(r)
        relations[alpha] = r
    ids = _world_ids(worlds)
    U = {w: frozenset(n for n in range(4) if rng.random() < 0.5) for w in ids}
    u = {w: {n: rng.randrange(4) for n in range(3)} for w in ids}
    return AgencyFrame(tuple(agents), ids, relations, U=U, u=u, seed_systems={w: "DCB" for w in ids})

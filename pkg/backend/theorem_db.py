# theorem_db.py - process-wide store of kernel-accepted theorems
import logging
import threading
from typing import Dict, Iterable, List, Optional

from language.coding import code_of

logger = logging.getLogger(__name__)


class TheoremDB:
    """
    Singleton map from system name to the theorems accepted in it.
    Theorems are keyed by the Gödel code of the sentence; the accepting
    proof is kept when one is supplied, together with the number of
    NEC_T/CONEC_T applications it used. Re-adding a theorem keeps the
    cheaper of the two proofs.
    """
    _instance = None
    _lock = threading.Lock()

    def __new__(cls):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
                    cls._instance._initialize_store()
        return cls._instance

    def _initialize_store(self):
        self._theorems: Dict[str, Dict[int, tuple]] = {}
        self._write_lock = threading.Lock()
        logger.debug("theorem store initialized")

    def add(self, system: str, formula, proof=None, necessitations: int = 0) -> None:
        code = code_of(formula)
        with self._write_lock:
            store = dict(self._theorems.get(system, {}))
            previous = store.get(code)
            if previous is not None and previous[2] <= necessitations:
                return
            store[code] = (formula, proof, necessitations)
            self._theorems[system] = store

    def proved_in(self, system: str, formula) -> bool:
        return code_of(formula) in self._theorems.get(system, {})

    def holds(self, formula, systems: Iterable[str]) -> bool:
        """Accepted in at least one of the given systems"""
        code = code_of(formula)
        return any(code in self._theorems.get(s, {}) for s in systems)

    def proof_of(self, system: str, formula):
        entry = self._theorems.get(system, {}).get(code_of(formula))
        return entry[1] if entry else None

    def necessitations(self, formula, systems: Iterable[str]) -> Optional[int]:
        """Fewest NEC_T/CONEC_T uses behind the formula in any of the systems, None if unproved"""
        code = code_of(formula)
        counts = [self._theorems[s][code][2] for s in systems if code in self._theorems.get(s, {})]
        return min(counts, default=None)

    def theorems(self, system: Optional[str] = None) -> List:
        if system is not None:
            return [entry[0] for entry in self._theorems.get(system, {}).values()]
        return [entry[0] for store in self._theorems.values() for entry in store.values()]

    def systems(self) -> List[str]:
        return list(self._theorems)

    def size(self) -> int:
        return sum(len(store) for store in self._theorems.values())

    def clear(self) -> None:
        with self._write_lock:
            self._theorems = {}
        logger.debug("theorem store cleared")


def get_theorem_db() -> TheoremDB:
    return TheoremDB()

# revision/truth.py - strong Kleene truth values
from enum import Enum
from typing import Iterable


class ThreeValuedTruth(Enum):
    FALSE = 0
    UNKNOWN = 1
    TRUE = 2

    def __str__(self):
        return self.name.lower()

    @classmethod
    def of(cls, value: bool) -> "ThreeValuedTruth":
        return cls.TRUE if value else cls.FALSE

    @property
    def determined(self) -> bool:
        return self is not ThreeValuedTruth.UNKNOWN

    def neg(self) -> "ThreeValuedTruth":
        return ThreeValuedTruth(2 - self.value)

    def conj(self, other: "ThreeValuedTruth") -> "ThreeValuedTruth":
        return ThreeValuedTruth(min(self.value, other.value))

    def disj(self, other: "ThreeValuedTruth") -> "ThreeValuedTruth":
        return ThreeValuedTruth(max(self.value, other.value))

    def implies(self, other: "ThreeValuedTruth") -> "ThreeValuedTruth":
        return self.neg().disj(other)

    def iff(self, other: "ThreeValuedTruth") -> "ThreeValuedTruth":
        return self.implies(other).conj(other.implies(self))


TRUE, UNKNOWN, FALSE = ThreeValuedTruth.TRUE, ThreeValuedTruth.UNKNOWN, ThreeValuedTruth.FALSE


def all_of(values: Iterable[ThreeValuedTruth]) -> ThreeValuedTruth:
    """Kleene conjunction; the empty conjunction is true"""
    result = TRUE
    for v in values:
        result = result.conj(v)
        if result is FALSE:
            break
    return result


def any_of(values: Iterable[ThreeValuedTruth]) -> ThreeValuedTruth:
    result = FALSE
    for v in values:
        result = result.disj(v)
        if result is TRUE:
            break
    return result

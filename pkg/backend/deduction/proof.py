# deduction/proof.py - proof objects and the line-oriented proof text format
#
#   # system: KT
#   1 | 0 = 0 | eq
#   2 | forall a (Ag(a) -> K2(a, ⌜0 = 0⌝)) | nec_k 1
#
# A justification is a rule name followed by arguments: integers refer to
# earlier steps, {braced} arguments are formulas or terms, bare words are
# system names, schema ids and variables.
import logging
import re
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple, Union

from errors import ParseError, ProofFormatError
from language.coding import pretty
from language.parser import parse
from language.syntax import is_formula, is_term

logger = logging.getLogger(__name__)

Argument = Union[int, str, object]

_TOKEN = re.compile(r"\{[^}]*\}|[^\s{}]+")
_SYSTEM_HEADER = re.compile(r"^#\s*system\s*:\s*(\S+)\s*$")
_NAME_HEADER = re.compile(r"^#\s*name\s*:\s*(.+?)\s*$")


@dataclass(frozen=True)
class Justification:
    rule: str
    args: Tuple[Argument, ...] = ()

    @property
    def refs(self) -> Tuple[int, ...]:
        return tuple(a for a in self.args if isinstance(a, int))

    @property
    def params(self) -> Tuple:
        return tuple(a for a in self.args if not isinstance(a, int))

    def words(self) -> Tuple[str, ...]:
        return tuple(a for a in self.args if isinstance(a, str))

    def syntax(self) -> Tuple:
        return tuple(a for a in self.args if is_formula(a) or is_term(a))

    def to_text(self) -> str:
        parts = [self.rule]
        for arg in self.args:
            if isinstance(arg, (int, str)):
                parts.append(str(arg))
            else:
                parts.append("{" + pretty(arg) + "}")
        return " ".join(parts)


@dataclass(frozen=True)
class Step:
    index: int
    formula: object
    justification: Justification


@dataclass
class Proof:
    system: str
    steps: List[Step] = field(default_factory=list)
    name: str = ""

    @property
    def conclusion(self):
        return self.steps[-1].formula if self.steps else None

    def __len__(self):
        return len(self.steps)

    def step(self, index: int) -> Step:
        if not 1 <= index <= len(self.steps):
            raise ProofFormatError(f"no step {index} in a proof of {len(self.steps)} step(s)")
        return self.steps[index - 1]

    def rule_counts(self) -> dict:
        counts: dict = {}
        for s in self.steps:
            counts[s.justification.rule] = counts.get(s.justification.rule, 0) + 1
        return counts

    def to_text(self) -> str:
        lines = [f"# system: {self.system}"]
        if self.name:
            lines.append(f"# name: {self.name}")
        for s in self.steps:
            lines.append(f"{s.index} | {pretty(s.formula)} | {s.justification.to_text()}")
        return "\n".join(lines) + "\n"


# ==================== Reading ====================

def _split_line(line: str) -> Tuple[str, str, str]:
    """index, formula, justification; the justification follows the last top-level bar"""
    first = line.find("|")
    if first < 0:
        raise ProofFormatError(f"expected '<index> | <formula> | <justification>': {line!r}")
    depth, last = 0, -1
    for position, char in enumerate(line):
        if char == "{":
            depth += 1
        elif char == "}":
            depth -= 1
        elif char == "|" and depth == 0:
            last = position
    if last == first:
        raise ProofFormatError(f"missing justification: {line!r}")
    return line[:first].strip(), line[first + 1:last].strip(), line[last + 1:].strip()


def _argument(token: str, line_number: int) -> Argument:
    if token.startswith("{"):
        text = token[1:-1].strip()
        try:
            return parse(text)
        except ParseError as e:
            raise ProofFormatError(f"line {line_number}: bad argument {token}: {e}") from None
    if token.isdigit():
        return int(token)
    return token


def parse_justification(text: str, line_number: int = 0) -> Justification:
    tokens = _TOKEN.findall(text)
    if not tokens:
        raise ProofFormatError(f"line {line_number}: empty justification")
    return Justification(tokens[0], tuple(_argument(t, line_number) for t in tokens[1:]))


def proof_from_text(text: str, system: Optional[str] = None) -> Proof:
    """Read a proof; the system comes from the argument or from a '# system:' header"""
    name = ""
    steps: List[Step] = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            header = _SYSTEM_HEADER.match(line)
            if header and system is None:
                system = header.group(1)
            titled = _NAME_HEADER.match(line)
            if titled:
                name = titled.group(1)
            continue
        index_text, formula_text, justification_text = _split_line(line)
        if not index_text.isdigit():
            raise ProofFormatError(f"line {line_number}: step index {index_text!r} is not a number")
        index = int(index_text)
        if index != len(steps) + 1:
            raise ProofFormatError(f"line {line_number}: expected step {len(steps) + 1}, found {index}")
        try:
            formula = parse(formula_text)
        except ParseError as e:
            raise ProofFormatError(f"line {line_number}: {e}") from None
        if not is_formula(formula):
            raise ProofFormatError(f"line {line_number}: step {index} is a term, not a formula")
        steps.append(Step(index, formula, parse_justification(justification_text, line_number)))
    if system is None:
        raise ProofFormatError("no target system: pass one or add a '# system: NAME' header")
    if not steps:
        raise ProofFormatError("the proof has no steps")
    return Proof(system, steps, name)


def proofs_from_text(text: str) -> List[Proof]:
    """Several proofs in one file, each starting at its own '# system:' header"""
    chunks: List[List[str]] = []
    for line in text.splitlines():
        if _SYSTEM_HEADER.match(line.strip()) or not chunks:
            chunks.append([])
        chunks[-1].append(line)
    return [proof_from_text("\n".join(chunk)) for chunk in chunks if any(
        l.strip() and not l.strip().startswith("#") for l in chunk)]


def proofs_to_text(proofs: Iterable[Proof]) -> str:
    return "\n".join(p.to_text() for p in proofs)

"""
Noncommutative rewriting for path algebras.

Linear combinations of parallel paths are oriented into rules that replace
their leading monomial (largest in the length-then-declaration order) by a
combination of smaller monomials. ``complete`` resolves overlaps between
rules, Buchberger style, up to a length cap.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from quiverar.algebra.quiver import Path, Quiver
from quiverar.linalg.fields import Field, Scalar

logger = logging.getLogger(__name__)

Poly = Dict[Path, Scalar]


def add_term(poly: Poly, path: Path, coeff: Scalar, field: Field) -> None:
    """Add ``coeff * path`` into ``poly`` in place, dropping zero coefficients."""
    value = field.add(poly.get(path, field.zero()), coeff)
    if field.is_zero(value):
        poly.pop(path, None)
    else:
        poly[path] = value


def format_poly(poly: Poly, quiver: Quiver) -> str:
    if not poly:
        return "0"
    terms = []
    for p in sorted(poly, key=quiver.sort_key, reverse=True):
        c = poly[p]
        terms.append(str(p) if c == 1 else f"{c}*{p}")
    return " + ".join(terms)


@dataclass
class Rule:
    """``lead -> tail``: the leading monomial and the combination replacing it."""

    lead: Path
    tail: Poly


@dataclass
class CompletionResult:
    """Outcome of ``RewriteSystem.complete``."""

    complete: bool
    rules_added: int
    overlaps_checked: int
    skipped: List[str] = field(default_factory=list)


class RewriteSystem:
    """A set of reduction rules over the path algebra of a quiver."""

    def __init__(self, quiver: Quiver, field: Field):
        """Initialize an empty rewrite system.

        Args:
            quiver: The quiver whose paths are rewritten.
            field: The coefficient field.
        """
        self.quiver = quiver
        self.field = field
        self.rules: Dict[Tuple[str, ...], Rule] = {}
        self.complete_flag = True

    @property
    def lead_lengths(self) -> List[int]:
        return sorted({len(w) for w in self.rules})

    def leading_monomial(self, poly: Poly) -> Path:
        return max(poly, key=self.quiver.sort_key)

    def find_redex(self, path: Path) -> Optional[Tuple[int, Rule]]:
        """Leftmost, then shortest, occurrence of a rule's leading monomial in ``path``."""
        word = path.arrows
        for start in range(len(word)):
            for length in self.lead_lengths:
                if start + length > len(word):
                    break
                rule = self.rules.get(word[start : start + length])
                if rule is not None:
                    return start, rule
        return None

    def is_irreducible(self, path: Path) -> bool:
        return self.find_redex(path) is None

    def splice(self, path: Path, start: int, length: int, middle: Path) -> Path:
        """Replace ``path.arrows[start:start+length]`` by the parallel path ``middle``."""
        word = path.arrows
        return Path(path.source, path.target, word[:start] + middle.arrows + word[start + length :])

    def reduce(self, poly: Poly) -> Poly:
        """Fully reduce ``poly``.

        The largest remaining monomial is rewritten first; every rewrite step
        produces strictly smaller monomials, so finished terms are never revisited.
        """
        f = self.field
        work: Poly = {p: c for p, c in poly.items() if not f.is_zero(c)}
        result: Poly = {}
        while work:
            m = self.leading_monomial(work)
            c = work.pop(m)
            redex = self.find_redex(m)
            if redex is None:
                result[m] = c
                continue
            start, rule = redex
            span = len(rule.lead.arrows)
            for t, tc in rule.tail.items():
                add_term(work, self.splice(m, start, span, t), f.multiply(c, tc), f)
        return result

    def orient(self, poly: Poly) -> Optional[Rule]:
        """Turn a reduced nonzero combination into a rule, or None for zero."""
        if not poly:
            return None
        f = self.field
        lead = self.leading_monomial(poly)
        inv = f.reciprocal(poly[lead])
        tail = {p: f.negate(f.multiply(inv, c)) for p, c in poly.items() if p != lead}
        return Rule(lead=lead, tail=tail)

    def _wrap(self, left: Tuple[str, ...], poly: Poly, right: Tuple[str, ...], source: str,
              target: str) -> Poly:
        return {Path(source, target, left + p.arrows + right): c for p, c in poly.items()}

    def _overlaps(self, u: Rule, v: Rule) -> List[Tuple[int, Tuple[str, ...]]]:
        """Proper overlaps where the right end of ``u`` equals the left end of ``v``."""
        a, b = u.lead.arrows, v.lead.arrows
        found = []
        for k in range(1, min(len(a), len(b))):
            if a[-k:] == b[:k]:
                found.append((k, a + b[k:]))
        return found

    def _s_polynomial(self, u: Rule, v: Rule, k: int) -> Poly:
        a, b = u.lead.arrows, v.lead.arrows
        source, target = v.lead.source, u.lead.target
        right = b[k:]
        left = a[:-k]
        s = self._wrap((), u.tail, right, source, target)
        for p, c in self._wrap(left, v.tail, (), source, target).items():
            add_term(s, p, self.field.negate(c), self.field)
        return s

    def _as_poly(self, rule: Rule) -> Poly:
        poly = {rule.lead: self.field.one()}
        for p, c in rule.tail.items():
            add_term(poly, p, self.field.negate(c), self.field)
        return poly

    def complete(self, generators: Sequence[Poly], degree_cap: int) -> CompletionResult:
        """Complete the system for the ideal generated by ``generators``.

        Args:
            generators: Combinations of parallel paths of length at least 2.
            degree_cap: Longest overlap word examined.

        Returns:
            The completion outcome; ``complete`` is False when an overlap or a
            leading monomial longer than ``degree_cap`` had to be skipped.
        """
        queue: List[Poly] = [dict(g) for g in generators]
        added = 0
        checked = 0
        skipped: List[str] = []
        while queue:
            rule = self.orient(self.reduce(queue.pop(0)))
            if rule is None:
                continue
            lead = rule.lead.arrows
            if len(lead) > degree_cap:
                skipped.append(f"leading monomial {rule.lead} exceeds degree {degree_cap}")
            for word, old in list(self.rules.items()):
                if any(word[i : i + len(lead)] == lead for i in range(len(word) - len(lead) + 1)):
                    del self.rules[word]
                    queue.append(self._as_poly(old))
            self.rules[lead] = rule
            added += 1
            logger.debug(f"New rule {rule.lead} -> {format_poly(rule.tail, self.quiver)}")
            for other in list(self.rules.values()):
                pairs = [(rule, other)] if other is rule else [(rule, other), (other, rule)]
                for u, v in pairs:
                    for k, word in self._overlaps(u, v):
                        if len(word) > degree_cap:
                            skipped.append(f"overlap {'*'.join(word)} exceeds degree {degree_cap}")
                            continue
                        checked += 1
                        s = self.reduce(self._s_polynomial(u, v, k))
                        if s:
                            queue.append(s)
            for other in self.rules.values():
                other.tail = self.reduce(other.tail)
        self.complete_flag = not skipped
        if skipped:
            logger.warning(f"Rewrite completion stopped at degree {degree_cap}: {skipped[0]}")
        logger.info(f"Completion finished with {len(self.rules)} rules, {checked} overlaps checked")
        return CompletionResult(
            complete=not skipped, rules_added=added, overlaps_checked=checked, skipped=skipped
        )


"""Finite complete rewriting systems over symmetric alphabets.

Rewriting to irreducibles uses a fixed deterministic strategy (leftmost
occurrence, lowest rule index on ties); for a complete system the result is
strategy-independent, which ``check_complete`` confirms at desk scale by
brute force.  Prefix rewriting always rewrites the shortest reducible
prefix, and ``prl`` counts the steps of that canonical sequence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BudgetExceededError, FormatError, StructureError
from .words import Alphabet, Word, parse_sections, alphabet_from_sections

__all__ = [
    "RewriteRule",
    "RewritingSystem",
    "CompletenessReport",
    "is_irreducible",
    "reduce_to_irreducible",
    "prefix_rewrite_step",
    "prefix_rewrite_length",
    "minimize",
    "check_complete",
    "word_problem",
    "load_rewriting_system",
    "z2_system",
    "bs12_system",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Word

    def __post_init__(self) -> None:
        if len(self.lhs) == 0:
            raise FormatError("rule lhs must be nonempty")
        if self.lhs == self.rhs:
            raise FormatError("rule lhs equals rhs")

    def __str__(self) -> str:
        return f"{self.lhs} -> {self.rhs}"


@dataclass(frozen=True)
class RewritingSystem:
    """An ordered list of string rules over a symmetric alphabet.

    ``claimed_complete`` records that the caller asserts termination and
    confluence; desk-scale evidence comes from :func:`check_complete`.
    """

    alphabet: Alphabet
    rules: tuple[RewriteRule, ...]
    claimed_complete: bool = False

    def word(self, text: str) -> Word:
        return self.alphabet.word(text)

    def empty(self) -> Word:
        return self.alphabet.empty()


def _match_at(w: tuple[int, ...], lhs: tuple[int, ...], pos: int) -> bool:
    return w[pos : pos + len(lhs)] == lhs


def _leftmost_redex(S: RewritingSystem, letters: tuple[int, ...]) -> tuple[int, int] | None:
    """(position, rule index) of the leftmost occurrence of any lhs,
    lowest rule index on ties; None if irreducible."""
    n = len(letters)
    for pos in range(n):
        for ri, rule in enumerate(S.rules):
            l = rule.lhs.letters
            if len(l) <= n - pos and _match_at(letters, l, pos):
                return pos, ri
    return None


def is_irreducible(S: RewritingSystem, w: Word) -> bool:
    """True iff no rule lhs occurs as a subword of ``w``."""
    return _leftmost_redex(S, w.letters) is None


def reduce_to_irreducible(S: RewritingSystem, w: Word, budget: int = DEFAULT_BUDGET) -> Word:
    """Rewrite ``w`` to its irreducible form (leftmost, lowest rule index).

    Raises :class:`BudgetExceededError` if the system does not terminate
    within ``budget`` rewriting steps.
    """
    letters = w.letters
    for _ in range(budget):
        hit = _leftmost_redex(S, letters)
        if hit is None:
            return Word(S.alphabet, letters)
        pos, ri = hit
        rule = S.rules[ri]
        letters = letters[:pos] + rule.rhs.letters + letters[pos + len(rule.lhs) :]
    raise BudgetExceededError(f"system not terminating within budget on {w!r}")


def prefix_rewrite_step(S: RewritingSystem, w: Word) -> Word:
    """Rewrite the shortest reducible prefix of ``w``.

    The minimality of the prefix forces the rule lhs to occur as a suffix
    of that prefix.  Raises :class:`StructureError` if ``w`` is irreducible.
    """
    letters = w.letters
    n = len(letters)
    for end in range(1, n + 1):
        for ri, rule in enumerate(S.rules):
            l = rule.lhs.letters
            if len(l) <= end and letters[end - len(l) : end] == l:
                return Word(
                    S.alphabet,
                    letters[: end - len(l)] + rule.rhs.letters + letters[end:],
                )
    raise StructureError("nothing to rewrite: word is irreducible")


def prefix_rewrite_length(S: RewritingSystem, w: Word, budget: int = DEFAULT_BUDGET) -> int:
    """Number of prefix rewriting steps from ``w`` to an irreducible word."""
    steps = 0
    while not is_irreducible(S, w):
        w = prefix_rewrite_step(S, w)
        steps += 1
        if steps > budget:
            raise BudgetExceededError("prefix rewriting exceeded budget")
    return steps


def word_problem(S: RewritingSystem, u: Word, v: Word, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff ``u`` and ``v`` reduce to the same irreducible word."""
    return reduce_to_irreducible(S, u, budget) == reduce_to_irreducible(S, v, budget)


# ---------------------------------------------------------------------------
# Minimization (same irreducible set; no identity letter; inverse-closed).


def _proper_subword_reducible(S: RewritingSystem, u: Word) -> bool:
    letters = u.letters
    n = len(letters)
    for i in range(n):
        for j in range(i + 1, n + 1):
            if j - i == n:
                continue
            if _leftmost_redex(S, letters[i:j]) is not None:
                return True
    return False


def _remap_word(w: Word, target: Alphabet) -> Word:
    return Word(target, tuple(target.index(w.alphabet.tokens[i]) for i in w.letters))


def minimize(
    S: RewritingSystem,
    budget: int = DEFAULT_BUDGET,
    inverse_search_len: int = 12,
) -> RewritingSystem:
    """Transform a complete system into an equivalent minimal one.

    Minimal means: each rhs and every proper subword of each lhs is
    irreducible.  Letters representing the identity are removed from the
    alphabet together with their rules, and for letters that appear in no
    rule but whose inverse does, a rule ``a -> z_a`` is appended, where
    ``z_a`` is the irreducible word representing ``a`` (found by a bounded
    breadth-first search for a word cancelling the inverse letter).
    """
    rules = list(S.rules)
    alphabet = S.alphabet

    def fixpoint(rules: list[RewriteRule]) -> list[RewriteRule]:
        while True:
            sys = RewritingSystem(alphabet, tuple(rules), claimed_complete=True)
            changed = False
            out: list[RewriteRule] = []
            seen: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
            for i, rule in enumerate(rules):
                others = RewritingSystem(
                    alphabet, tuple(rules[:i] + rules[i + 1 :]), claimed_complete=True
                )
                # A rule whose lhs properly contains another lhs is redundant:
                # completeness makes both routes reach the same irreducible.
                if _proper_subword_reducible(others, rule.lhs):
                    changed = True
                    continue
                rhs = reduce_to_irreducible(sys, rule.rhs, budget)
                if rhs != rule.rhs:
                    changed = True
                if rule.lhs == rhs:
                    changed = True
                    continue
                key = (rule.lhs.letters, rhs.letters)
                if key in seen:
                    changed = True
                    continue
                seen.add(key)
                out.append(RewriteRule(rule.lhs, rhs))
            rules = out
            if not changed:
                return rules

    rules = fixpoint(rules)

    # Drop letters that represent the identity (rules a -> empty).
    identity = {r.lhs.letters[0] for r in rules if len(r.lhs) == 1 and len(r.rhs) == 0}
    for a in list(identity):
        b = alphabet.inv(a)
        if b not in identity:
            raise StructureError(
                f"letter {alphabet.tokens[a]!r} represents the identity but its "
                f"inverse {alphabet.tokens[b]!r} has no cancelling rule; system incomplete"
            )
    if identity:
        keep = [i for i in range(len(alphabet)) if i not in identity]
        new_alphabet = Alphabet(
            tuple(alphabet.tokens[i] for i in keep),
            tuple(keep.index(alphabet.inverse[i]) for i in keep),
        )
        new_rules: list[RewriteRule] = []
        for rule in rules:
            if len(rule.lhs) == 1 and rule.lhs.letters[0] in identity:
                continue
            # Identity letters cannot occur in other minimal rules; erase
            # defensively and re-reduce below if they do.
            def strip(w: Word) -> Word:
                return Word(alphabet, tuple(i for i in w.letters if i not in identity))

            new_rules.append(
                RewriteRule(_remap_word(strip(rule.lhs), new_alphabet), _remap_word(strip(rule.rhs), new_alphabet))
            )
        alphabet = new_alphabet
        rules = fixpoint(new_rules)

    # Inverse closure: letters that occur in no rule get a defining rule.
    sys = RewritingSystem(alphabet, tuple(rules), claimed_complete=True)
    used = {i for r in rules for i in r.lhs.letters + r.rhs.letters}
    for c in range(len(alphabet)):
        if c in used:
            continue
        b = alphabet.inv(c)
        if b not in used:
            continue
        z = _search_inverse_word(sys, b, exclude=c, max_len=inverse_search_len, budget=budget)
        if z is None:
            raise StructureError(
                f"no irreducible word of length <= {inverse_search_len} represents "
                f"{alphabet.tokens[c]!r}; cannot close the system under inversion"
            )
        rules.append(RewriteRule(alphabet.letter(c), z))

    result = RewritingSystem(alphabet, tuple(rules), claimed_complete=True)
    for rule in result.rules:
        if not is_irreducible(result, rule.rhs):
            raise StructureError(f"minimization postcondition failed on rhs of {rule}")
        if _proper_subword_reducible(result, rule.lhs):
            raise StructureError(f"minimization postcondition failed on lhs of {rule}")
    return result


def _search_inverse_word(
    S: RewritingSystem, b: int, exclude: int, max_len: int, budget: int
) -> Word | None:
    """Shortest (shortlex) word z, avoiding the letter ``exclude``, with
    b z =_G empty; returns the irreducible form of z."""
    letters = [i for i in range(len(S.alphabet)) if i != exclude]
    for n in range(1, max_len + 1):
        for combo in itertools.product(letters, repeat=n):
            z = Word(S.alphabet, combo)
            if len(reduce_to_irreducible(S, S.alphabet.letter(b) * z, budget)) == 0:
                return reduce_to_irreducible(S, z, budget)
    return None


# ---------------------------------------------------------------------------
# Desk-scale completeness report.


@dataclass
class CompletenessReport:
    max_len: int
    terminating: bool = True
    termination_failures: list[str] = field(default_factory=list)
    locally_confluent: bool = True
    critical_pair_failures: list[str] = field(default_factory=list)
    unique_normal_forms: bool = True
    uniqueness_failures: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.terminating and self.locally_confluent and self.unique_normal_forms

    def to_dict(self) -> dict:
        return {
            "max_len": self.max_len,
            "ok": self.ok,
            "terminating": self.terminating,
            "termination_failures": self.termination_failures,
            "locally_confluent": self.locally_confluent,
            "critical_pair_failures": self.critical_pair_failures,
            "unique_normal_forms": self.unique_normal_forms,
            "uniqueness_failures": self.uniqueness_failures,
            "skipped": self.skipped,
        }


def _single_step_rewrites(S: RewritingSystem, letters: tuple[int, ...]) -> list[tuple[int, ...]]:
    out = []
    n = len(letters)
    for pos in range(n):
        for rule in S.rules:
            l = rule.lhs.letters
            if len(l) <= n - pos and _match_at(letters, l, pos):
                out.append(letters[:pos] + rule.rhs.letters + letters[pos + len(l) :])
    return out


def _all_irreducibles(
    S: RewritingSystem,
    letters: tuple[int, ...],
    memo: dict[tuple[int, ...], frozenset[tuple[int, ...]]],
) -> frozenset[tuple[int, ...]]:
    """All irreducible words reachable by any rewriting strategy."""
    if letters in memo:
        return memo[letters]
    succ = _single_step_rewrites(S, letters)
    if not succ:
        result = frozenset([letters])
    else:
        acc: set[tuple[int, ...]] = set()
        for s in succ:
            acc |= _all_irreducibles(S, s, memo)
        result = frozenset(acc)
    memo[letters] = result
    return result


def check_complete(
    S: RewritingSystem, max_len: int, budget: int = 10**4
) -> CompletenessReport:
    """Desk-scale surrogate for completeness: termination on all words of
    length <= max_len, resolution of all critical pairs, and uniqueness of
    irreducibles under every rewriting strategy."""
    report = CompletenessReport(max_len=max_len)
    alphabet_range = range(len(S.alphabet))

    for n in range(max_len + 1):
        for combo in itertools.product(alphabet_range, repeat=n):
            try:
                reduce_to_irreducible(S, Word(S.alphabet, combo), budget)
            except BudgetExceededError:
                report.terminating = False
                report.termination_failures.append(str(Word(S.alphabet, combo)))
                if len(report.termination_failures) >= 5:
                    break
        if not report.terminating:
            break

    if not report.terminating:
        report.skipped.append("local confluence and uniqueness skipped: not terminating")
        report.locally_confluent = False
        report.unique_normal_forms = False
        return report

    # Local confluence via critical pairs (overlaps and containments).
    for r1, r2 in itertools.product(S.rules, repeat=2):
        u1, u2 = r1.lhs.letters, r2.lhs.letters
        # overlap: nonempty proper suffix of u1 equals prefix of u2
        for k in range(1, min(len(u1), len(u2))):
            if u1[-k:] == u2[:k]:
                w = u1 + u2[k:]
                left = r1.rhs.letters + u2[k:]
                right = u1[:-k] + r2.rhs.letters
                a = reduce_to_irreducible(S, Word(S.alphabet, left), budget)
                b = reduce_to_irreducible(S, Word(S.alphabet, right), budget)
                if a != b:
                    report.locally_confluent = False
                    report.critical_pair_failures.append(
                        f"overlap {Word(S.alphabet, w)}: {a} != {b}"
                    )
        # containment: u2 occurs properly inside u1
        if r1 != r2 or len(u2) < len(u1):
            for pos in range(len(u1) - len(u2) + 1):
                if (pos, len(u2)) == (0, len(u1)):
                    continue
                if _match_at(u1, u2, pos):
                    left = r1.rhs.letters
                    right = u1[:pos] + r2.rhs.letters + u1[pos + len(u2) :]
                    a = reduce_to_irreducible(S, Word(S.alphabet, left), budget)
                    b = reduce_to_irreducible(S, Word(S.alphabet, right), budget)
                    if a != b:
                        report.locally_confluent = False
                        report.critical_pair_failures.append(
                            f"containment {Word(S.alphabet, u1)}: {a} != {b}"
                        )

    memo: dict[tuple[int, ...], frozenset[tuple[int, ...]]] = {}
    for n in range(max_len + 1):
        for combo in itertools.product(alphabet_range, repeat=n):
            forms = _all_irreducibles(S, combo, memo)
            if len(forms) != 1:
                report.unique_normal_forms = False
                report.uniqueness_failures.append(
                    f"{Word(S.alphabet, combo)} -> {sorted(str(Word(S.alphabet, f)) for f in forms)}"
                )
                if len(report.uniqueness_failures) >= 5:
                    return report
    return report


# ---------------------------------------------------------------------------
# File format: [generators] / [inverses] / [rules]; `lhs -> rhs` per line,
# empty rhs meaning the empty word.


def load_rewriting_system(text: str, claimed_complete: bool = True) -> RewritingSystem:
    sections = parse_sections(text)
    alphabet = alphabet_from_sections(sections)
    rules: list[RewriteRule] = []
    for line in sections.get("rules", []):
        if "->" not in line:
            raise FormatError(f"[rules] line missing '->': {line!r}")
        lhs_text, rhs_text = line.split("->", 1)
        rules.append(RewriteRule(alphabet.word(lhs_text), alphabet.word(rhs_text)))
    return RewritingSystem(alphabet, tuple(rules), claimed_complete=claimed_complete)


def z2_system() -> RewritingSystem:
    """The reference complete rewriting system for Z^2 used throughout the
    test suite: free cancellation plus commutation ordered a before b."""
    return load_rewriting_system(
        """
        [generators]
        a A b B
        [inverses]
        a A
        b B
        [rules]
        a A ->
        A a ->
        b B ->
        B b ->
        b a -> a b
        b A -> A b
        B a -> a B
        B A -> A B
        """
    )


def bs12_system() -> RewritingSystem:
    """A minimal finite complete rewriting system for BS(1,2) over the
    inverse-closed alphabet {a, A, d, D, t, T} with d =_G a^2.

    Found by Knuth-Bendix completion from the defining relations
    t a t^-1 = a^2 and d = a^2, then minimized; the extra generator d
    keeps the irreducible language factorial (over {a, t}^+- alone the
    carry subwords a t^j A admit no finite forbidden-subword description).
    Completeness is desk-scale checked in the test suite and every rule is
    verified against the faithful dyadic affine representation.
    """
    return load_rewriting_system(
        """
        [generators]
        a A d D t T
        [inverses]
        a A
        d D
        t T
        [rules]
        a A ->
        A a ->
        d D ->
        D d ->
        t T ->
        T t ->
        a a -> d
        A A -> D
        d a -> a d
        D A -> A D
        d A -> a
        D a -> A
        a D -> A
        A d -> a
        t a -> d t
        t A -> D t
        t d -> d d t
        t D -> D D t
        a T -> T d
        A T -> T D
        T d d -> d T
        T D D -> D T
        T d t -> a
        T D t -> A
        d T d -> a d T
        D T D -> A D T
        d T D -> T d
        D T d -> T D
        T a d -> d T A
        d d T A -> a d T a
        a d T A -> d T a
        T A D -> D T a
        D D T a -> A D T A
        A D T a -> D T A
        D D T T d -> A D T T D
        A D T T d -> D T T D
        a d T T D -> d T T d
        d d T T D -> a d T T d
        """
    )

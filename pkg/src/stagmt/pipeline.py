"""End-to-end translation: tokenize, parse, transfer, realize."""

from __future__ import annotations

from dataclasses import dataclass

from .derive import Derivation, build_derived_tree, render_tree
from .generator import Realization, realize, yield_surface
from .model import Grammar
from .morphotok import TokenizedSentence, tokenize
from .parser import PriorityLevel, parse
from .transfer import TargetDerivation, transfer_derivation


@dataclass(frozen=True)
class Candidate:
    """One derivation carried through the whole pipeline."""

    derivation: Derivation
    target: TargetDerivation
    realization: Realization
    cost: int
    source_rendered: str


@dataclass(frozen=True)
class TranslationResult:
    line: str
    sentence: TokenizedSentence
    levels: tuple[PriorityLevel, ...]
    candidates: tuple[Candidate, ...]

    @property
    def best(self) -> Candidate:
        """The deterministic first minimal-cost candidate."""
        return self.candidates[0]

    @property
    def translations(self) -> tuple[str, ...]:
        """Distinct output sentences, best level first, stable order."""
        seen: list[str] = []
        for candidate in self.candidates:
            if candidate.realization.surface not in seen:
                seen.append(candidate.realization.surface)
        return tuple(seen)


def translate_line(line: str, grammar: Grammar, *,
                   all_levels: bool = False) -> TranslationResult:
    """Translate one input line; raises on tokenization or parse failure."""
    sentence = tokenize(line, grammar)
    levels = parse(sentence, grammar, all_levels=True)
    chosen = levels if all_levels else levels[:1]
    candidates = []
    for level in chosen:
        for derivation in level.derivations:
            target = transfer_derivation(derivation, grammar)
            derived = realize(target, grammar)
            realization = Realization(
                derived=derived,
                surface=yield_surface(derived, sentence.terminator))
            source_tree = build_derived_tree(derivation, grammar)
            candidates.append(Candidate(
                derivation=derivation,
                target=target,
                realization=realization,
                cost=level.cost,
                source_rendered=render_tree(source_tree, grammar),
            ))
    return TranslationResult(line=line, sentence=sentence, levels=levels,
                             candidates=tuple(candidates))

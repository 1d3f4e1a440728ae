"""Mapping source derivations to target derivations.

One fixed convention does most of the work: the root node of a use's head
component corresponds to the root node of its target tree. Everything else
is read off the host pair's links. For each non-root use we look at where
its head component attached on the source side; if that site is linked, the
use's target tree attaches at the linked target address, and if the site is
the host head's root (an adjunction), it attaches at the target root.
Attachments of non-head components — the scrambled auxiliaries — have no
target-side counterpart at all, which is exactly how word-order variation
disappears in translation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .derive import Derivation
from .errors import DanglingUseError, UntranslatableAttachmentError
from .model import ROOT, Grammar, GornAddress, SyncPair


@dataclass(frozen=True)
class TargetAttachment:
    use: int
    host: int
    site: GornAddress
    op: str


@dataclass(frozen=True)
class TransferStep:
    """One resolved correspondence, kept for tracing."""

    use: int
    pair: str
    host: int
    host_pair: str
    src_comp: int
    src_site: GornAddress
    tgt_site: GornAddress
    op: str

    def __str__(self) -> str:
        return (f"u{self.use} {self.pair}: source u{self.host}/"
                f"c{self.src_comp}@{self.src_site} -> target "
                f"u{self.host}@{self.tgt_site} ({self.op})")


@dataclass(frozen=True)
class TargetDerivation:
    """Same use numbering as the source derivation it came from."""

    uses: tuple[str, ...]
    root: int
    attachments: tuple[TargetAttachment, ...]
    steps: tuple[TransferStep, ...]


def resolve_attachment(host_pair: SyncPair, comp: int,
                       site: GornAddress) -> GornAddress | None:
    """Linked target address for a source-side site, or None if unlinked."""
    link = host_pair.link_for(comp, site)
    return None if link is None else link.tgt


def transfer_derivation(derivation: Derivation, grammar: Grammar) -> TargetDerivation:
    """Carry a source derivation across the bilingual pairs.

    For each non-root use, the attachment of its head component determines
    the target attachment: the linked address when the source site carries a
    link, the host's target root when the site is the host head's own root
    (the fixed root-to-root convention, which is what scrambled auxiliaries
    use). The operation is carried through unchanged; whether it fits the
    target tree is realization's concern.
    """
    attachments = []
    steps = []
    for use, name in enumerate(derivation.uses):
        if use == derivation.root:
            continue
        pair = grammar.pair(name)
        head_att = derivation.attachment_of(use, pair.source.head)
        if head_att is None:
            raise DanglingUseError(
                f"use {use} ({name}): head component is attached nowhere")
        host_pair = grammar.pair(derivation.uses[head_att.host])
        tgt_site = resolve_attachment(host_pair, head_att.host_comp, head_att.site)
        if (tgt_site is None and head_att.site == ROOT
                and head_att.host_comp == host_pair.source.head):
            tgt_site = ROOT
        if tgt_site is None:
            raise UntranslatableAttachmentError(
                f"use {use} ({name}) attaches at u{head_att.host}/"
                f"c{head_att.host_comp}@{head_att.site}, which maps to no "
                f"target node of {host_pair.name}")

        attachments.append(TargetAttachment(use=use, host=head_att.host,
                                            site=tgt_site, op=head_att.op))
        steps.append(TransferStep(
            use=use, pair=name, host=head_att.host, host_pair=host_pair.name,
            src_comp=head_att.host_comp, src_site=head_att.site,
            tgt_site=tgt_site, op=head_att.op))

    return TargetDerivation(uses=derivation.uses, root=derivation.root,
                            attachments=tuple(attachments), steps=tuple(steps))

"""Scan driver: sweep finite quotients and aggregate fibring obstructions.

A vanishing degree-1 twisted polynomial at any probed quotient/field is an
unconditional obstruction: the character is not FP1-semi-fibred and its
kernel is not finitely generated.  Nonvanishing everywhere up to the bound
is only as strong as the bound; the verdict says exactly that, optionally
strengthened by user-asserted group properties that are not verifiable here.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .alexander import DEFAULT_ORDER_CEILING, AlexanderReport, full_report
from .foxcalc import CONVENTION
from .polyalg import CoefficientField
from .quotients import (
    FiniteGroup,
    FiniteQuotient,
    build_catalog,
    enumerate_homs,
    image_closure,
    same_kernel,
    trivial_quotient,
)
from .words import Character, Presentation, direct_product, render_character, render_presentation

__all__ = ["ScanConfig", "FibringVerdict", "scan", "product_vanishing_test", "emit_report"]


def default_fields() -> tuple[CoefficientField, ...]:
    return (CoefficientField.prime(2), CoefficientField.prime(3), CoefficientField.rationals())


@dataclass(frozen=True)
class ScanConfig:
    presentation: Presentation
    character: Character
    max_quotient_order: int = 12
    fields: tuple[CoefficientField, ...] = field(default_factory=default_fields)
    extra_groups: tuple[FiniteGroup, ...] = ()
    asserted_lerf: bool = False
    asserted_detection: bool = False  # nonvanishing is asserted to detect semi-fibring
    order_ceiling: int = DEFAULT_ORDER_CEILING


@dataclass(frozen=True)
class FibringVerdict:
    status: str  # "obstructed" | "no_obstruction_up_to"
    bound: int
    witness: AlexanderReport | None
    interpretation: tuple[str, ...]
    reports: tuple[AlexanderReport, ...]
    tested_quotients: tuple[FiniteQuotient, ...]
    skipped_quotients: tuple[tuple[FiniteQuotient, FiniteQuotient], ...]
    config: ScanConfig
    warnings: tuple[str, ...] = ()


def _quotient_stream(p: Presentation, cfg: ScanConfig):
    """Yield ("kept", q) / ("skipped", q, representative) events in scan order.

    The trivial quotient always comes first; later homomorphisms whose kernel
    matches an earlier kept quotient are merged into it.
    """
    kept: list[FiniteQuotient] = [trivial_quotient(p)]
    kept_sizes = [1]
    yield "kept", kept[0], None
    catalog = build_catalog(cfg.max_quotient_order, list(cfg.extra_groups))
    for group in catalog.groups:
        for hom in enumerate_homs(p, group, surjective_only=False):
            size = len(image_closure(group, hom.gen_images))
            merged = None
            for rep, rep_size in zip(kept, kept_sizes):
                if rep_size == size and same_kernel(p, hom, rep):
                    merged = rep
                    break
            if merged is None:
                kept.append(hom)
                kept_sizes.append(size)
                yield "kept", hom, None
            else:
                yield "skipped", hom, merged


def _scan_job(args) -> list[AlexanderReport]:
    presentation, character, quotient, coeff_field, ceiling = args
    out = []
    for chi in (character, character.negate()):
        out.extend(full_report(presentation, chi, quotient, coeff_field, ceiling))
    return out


def scan(cfg: ScanConfig, jobs: int = 1) -> FibringVerdict:
    """Run the quotient sweep; the minus character is scanned alongside.

    With jobs > 1 the (quotient, field) jobs fan out to a process pool; all
    jobs complete and the witness is the first vanishing degree-1 report in
    enumeration order, so the verdict is identical to a serial run.
    """
    if not cfg.fields:
        raise ValueError("at least one coefficient field is required")
    if cfg.max_quotient_order < 1:
        raise ValueError("max quotient order must be at least 1")
    if cfg.character.is_zero:
        raise ValueError("non-trivial character required")

    def job_for(q, f):
        return (cfg.presentation, cfg.character, q, f, cfg.order_ceiling)

    quotients: list[FiniteQuotient] = []
    skipped: list[tuple[FiniteQuotient, FiniteQuotient]] = []
    flat: list[AlexanderReport] = []
    witness = None

    if jobs > 1:
        # Fan out every job, then truncate to what a serial run would report.
        events = list(_quotient_stream(cfg.presentation, cfg))
        kept = [q for kind, q, _ in events if kind == "kept"]
        job_list = [job_for(q, f) for q in kept for f in cfg.fields]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for chunk in pool.map(_scan_job, job_list, chunksize=4):
                flat.extend(chunk)
        per_quotient = len(cfg.fields) * 4
        witness_quotient = None
        for idx, r in enumerate(flat):
            if r.degree == 1 and r.vanishing:
                witness = r
                flat = flat[: idx + 1]
                witness_quotient = idx // per_quotient
                break
        seen = -1
        for kind, q, rep in events:
            if kind == "kept":
                seen += 1
                quotients.append(q)
                if seen == witness_quotient:
                    break
            else:
                skipped.append((q, rep))
    else:
        # Lazy enumeration: an early witness stops the sweep immediately.
        for kind, q, rep in _quotient_stream(cfg.presentation, cfg):
            if kind == "skipped":
                skipped.append((q, rep))
                continue
            quotients.append(q)
            for f in cfg.fields:
                chunk_start = len(flat)
                flat.extend(_scan_job(job_for(q, f)))
                for idx in range(chunk_start, len(flat)):
                    r = flat[idx]
                    if r.degree == 1 and r.vanishing:
                        witness = r
                        flat = flat[: idx + 1]
                        break
                if witness is not None:
                    break
            if witness is not None:
                break

    warnings = []
    if cfg.max_quotient_order < 2 and not cfg.extra_groups:
        warnings.append("catalog is empty: only the trivial quotient was tested")

    if witness is not None:
        status = "obstructed"
        interpretation = (
            "A vanishing degree-1 twisted Alexander polynomial was found.",
            f"Witness: quotient {witness.quotient.group.name} (order "
            f"{witness.quotient.group.order}) over {witness.field.name}, character "
            f"{render_character(cfg.presentation, witness.character)}.",
            "Unconditionally, the character is not FP1-semi-fibred; kernel not "
            "finitely generated.",
        )
    else:
        status = "no_obstruction_up_to"
        lines = [
            f"No vanishing twisted Alexander polynomial up to quotient order "
            f"{cfg.max_quotient_order} over fields "
            f"{', '.join(f.name for f in cfg.fields)} (both character directions).",
        ]
        if cfg.asserted_lerf or cfg.asserted_detection:
            lines.append(
                "Under the asserted hypothesis, this is consistent with an "
                "algebraically fibred character; the certificate is complete only "
                "under the exhaustive quantifier over all finite quotients."
            )
        else:
            lines.append(
                "Inconclusive: no group hypothesis was asserted, so nonvanishing up "
                "to this bound neither certifies nor refutes fibring."
            )
        lines.append(
            "Note: nonvanishing alone certifies at most semi-fibring; the kernel "
            "may still fail to be finitely generated (one-sided)."
        )
        interpretation = tuple(lines)

    return FibringVerdict(
        status=status,
        bound=cfg.max_quotient_order,
        witness=witness,
        interpretation=interpretation,
        reports=tuple(flat),
        tested_quotients=tuple(quotients),
        skipped_quotients=tuple(skipped),
        config=cfg,
        warnings=tuple(warnings),
    )


def product_vanishing_test(p1: Presentation, chi1: Character, q1: FiniteQuotient,
                           p2: Presentation,
                           coefficient_field: CoefficientField | None = None) -> bool:
    """Degree-1 vanishing of (p1 x p2, (chi1, 0)) at the quotient pulled back
    through the projection onto the first factor."""
    if chi1.is_zero:
        raise ValueError("non-trivial character required on the first factor")
    coefficient_field = coefficient_field or CoefficientField.rationals()
    product = direct_product(p1, p2)
    chi = Character(chi1.values + (0,) * p2.generator_count)
    composite = FiniteQuotient(
        q1.group,
        q1.gen_images + (0,) * p2.generator_count,
        q1.surjective,
    )
    reports = full_report(product, chi, composite, coefficient_field)
    return reports[1].vanishing


def verdict_to_dict(v: FibringVerdict) -> dict:
    p = v.config.presentation
    return {
        "schema": 1,
        "tool": "fibrecheck",
        "version": __version__,
        "convention": CONVENTION,
        "status": v.status,
        "bound": v.bound,
        "fields": [f.name for f in v.config.fields],
        "assertions": {
            "lerf": v.config.asserted_lerf,
            "detection": v.config.asserted_detection,
        },
        "presentation": {
            "generators": list(p.generator_names),
            "text": render_presentation(p),
        },
        "character": render_character(p, v.config.character),
        "witness": None if v.witness is None else v.witness.as_dict(p),
        "interpretation": list(v.interpretation),
        "reports": [r.as_dict(p) for r in v.reports],
        "tested_quotients": [q.label() for q in v.tested_quotients],
        "skipped_quotients": [
            {"quotient": q.label(), "merged_into": rep.label()}
            for q, rep in v.skipped_quotients
        ],
        "warnings": list(v.warnings),
    }


def emit_report(v: FibringVerdict, format: str = "text") -> str:
    """Schema-stable JSON, or a human-readable text block."""
    if format == "json":
        return json.dumps(verdict_to_dict(v), indent=2) + "\n"
    if format != "text":
        raise ValueError(f"unknown report format {format!r}")
    p = v.config.presentation
    lines = [
        f"fibrecheck scan (schema 1, version {__version__}, convention {CONVENTION})",
        f"presentation: {render_presentation(p).replace(chr(10), ' | ')}",
        f"character: {render_character(p, v.config.character)} (minus direction scanned alongside)",
        f"fields: {', '.join(f.name for f in v.config.fields)}",
        f"catalog bound: {v.bound}",
        f"assertions: lerf={'yes' if v.config.asserted_lerf else 'no'}, "
        f"detection={'yes' if v.config.asserted_detection else 'no'}",
    ]
    for w in v.warnings:
        lines.append(f"warning: {w}")
    lines.append(f"verdict: {'OBSTRUCTED' if v.status == 'obstructed' else f'NO OBSTRUCTION up to order {v.bound}'}")
    if v.witness is not None:
        w = v.witness
        lines.append(
            f"witness: quotient {w.quotient.group.name} (order {w.quotient.group.order}), "
            f"field {w.field.name}, degree 1, character {render_character(p, w.character)}"
        )
    lines.append("interpretation:")
    for text in v.interpretation:
        lines.append(f"  - {text}")
    vanish_count = sum(1 for r in v.reports if r.vanishing)
    lines.append(f"reports: {len(v.reports)} computed, {vanish_count} vanishing")
    for r in v.reports:
        order = "order skipped" if r.order_skipped else f"order {r.order.render()}"
        lines.append(
            f"  [{r.quotient.group.name} ord {r.quotient.group.order} | {r.field.name} | "
            f"{render_character(p, r.character)}] deg {r.degree}: "
            f"{'VANISHING' if r.vanishing else 'nonvanishing'}, rank {r.rank_over_frac}, {order}"
        )
    lines.append(f"tested quotients: {len(v.tested_quotients)}; skipped (same kernel): {len(v.skipped_quotients)}")
    for q, rep in v.skipped_quotients:
        lines.append(
            f"  skipped {q.group.name} images {list(q.gen_images)} -> merged into "
            f"{rep.group.name} images {list(rep.gen_images)}"
        )
    return "\n".join(lines) + "\n"

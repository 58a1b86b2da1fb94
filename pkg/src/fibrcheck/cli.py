"""Command-line driver: ``fibrcheck analyze presentation.json --groups ... --primes ...``.

Exit codes: 0 no obstruction found, 10 obstructed, 2 error.
"""

import argparse
import json
import logging
import math
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .errors import CorruptCache, FibrcheckError, LimitExceeded, MissingLongitude
from .groups import (
    DEFAULT_MAX_HOMS,
    GroupHom,
    Permutation,
    TargetGroup,
    apply_word,
    div_phi_g,
    enumerate_epimorphisms,
    is_surjective,
)
from .obstruct import (
    CONSISTENT,
    OBSTRUCTED,
    CriterionInput,
    aggregate,
    baseline_check,
    permutation_criterion,
    regular_criterion,
    thurston_norm_from_genus,
)
from .polymat import NEG_INF, is_prime, lp_normalize
from .twisted import (
    PERMUTATION,
    REGULAR,
    Representation,
    build_complex,
    compute_deltas,
    delta1,
    ordinary_alexander,
)
from .words import abelianization_phi, load_presentation, surgery_presentation

log = logging.getLogger("fibrcheck")

EXIT_CONSISTENT = 0
EXIT_OBSTRUCTED = 10
EXIT_ERROR = 2

CACHE_FORMAT = "fibrcheck-epimorphism-cache"
DEFAULT_REGULAR_MAX_ORDER = 24

IRREDUCIBILITY_NOTE = ("irreducibility of N(K) is assumed; 0-surgery on a nontrivial knot "
                       "is irreducible by Gabai")


@dataclass
class RunConfig:
    input_path: str
    groups: list
    primes: list
    mode: str = "symplectic"
    max_homs: int = DEFAULT_MAX_HOMS
    workers: int = 1
    cache_path: str = None
    out_path: str = None
    regular_max_order: int = DEFAULT_REGULAR_MAX_ORDER
    time_limit: float = None

    def __post_init__(self):
        self.groups = [g if isinstance(g, TargetGroup) else TargetGroup.parse(g) for g in self.groups]
        if not self.groups:
            raise ValueError("at least one target group is required")
        for p in self.primes:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if p >= 2**31:
                raise ValueError(f"prime {p} too large")
        if self.mode not in ("symplectic", "fibered"):
            raise ValueError(f"unknown mode {self.mode!r}")


def _degree_json(d):
    return "-inf" if d == NEG_INF else d


# -- epimorphism cache ------------------------------------------------------


def load_cache(path):
    """Read the cache file; a missing file is empty, a corrupt one raises :class:`CorruptCache`."""
    if not path or not os.path.exists(path):
        return []
    try:
        with open(path, "rb") as fh:
            doc = json.loads(fh.read().decode("utf-8"))
        if not isinstance(doc, dict) or doc.get("format") != CACHE_FORMAT:
            raise ValueError("wrong format tag")
        entries = doc["entries"]
        for e in entries:
            if not isinstance(e["presentation_hash"], str) or not isinstance(e["group"], str):
                raise ValueError("bad entry")
            for tbl in e["images"]:
                for img in tbl:
                    if not all(isinstance(v, int) for v in img):
                        raise ValueError("bad image table")
        return entries
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CorruptCache(f"cannot read cache {path}: {exc}") from None


def cache_lookup(entries, phash, group):
    for e in entries:
        if e["presentation_hash"] == phash and e["group"] == group.name and e.get("complete"):
            return e["images"]
    return None


def save_cache(path, entries):
    doc = {"format": CACHE_FORMAT, "version": 1, "entries": entries}
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".fibrcheck-cache-")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True)
    os.replace(tmp, path)


def cache_roundtrip(cache_path, phash, group, homs=None, complete=True):
    """Store ``homs`` for (hash, group) if given, else load them; returns the homs or ``None``."""
    try:
        entries = load_cache(cache_path)
    except CorruptCache as exc:
        log.warning("%s; ignoring it", exc)
        entries = []
    if homs is None:
        tables = cache_lookup(entries, phash, group)
        if tables is None:
            return None
        return [GroupHom(group, tuple(Permutation(img) for img in tbl), True) for tbl in tables]
    entries = [e for e in entries
               if not (e["presentation_hash"] == phash and e["group"] == group.name)]
    entries.append({
        "presentation_hash": phash,
        "group": group.name,
        "complete": complete,
        "images": [h.image_table() for h in homs],
    })
    entries.sort(key=lambda e: (e["presentation_hash"], e["group"]))
    save_cache(cache_path, entries)
    return homs


def _valid_homs(presentation, homs):
    for h in homs:
        if not all(h.target.contains(x) for x in h.images) or len(h.images) != presentation.num_generators:
            return False
        if not all(apply_word(h, r).is_identity() for r in presentation.relators):
            return False
        if not is_surjective(h):
            return False
    return True


# -- per-witness evaluation -------------------------------------------------


def _evaluate(task):
    presentation, phi, hom, rep, thurston, trivial_d1 = task
    cx = build_complex(presentation, hom, rep, phi)
    deltas = compute_deltas(cx)
    group = hom.target
    div = None
    if rep.kind == REGULAR:
        div = div_phi_g(presentation, hom, phi)
        verdict = regular_criterion(CriterionInput(thurston, deltas, rep, group, div))
    else:
        verdict = permutation_criterion(CriterionInput(thurston, deltas, rep, group))
    record = {
        "group": group.name,
        "group_order": group.order,
        "k": group.k,
        "images": hom.image_table(),
        "prime": rep.prime,
        "rep": rep.kind,
        "dim": rep.dim,
        "delta0": deltas.delta0.to_json(),
        "delta1": deltas.delta1.to_json(),
        "delta2": deltas.delta2.to_json(),
        "degrees": [_degree_json(d) for d in deltas.degrees],
        "thurston_norm": thurston,
        "verdict": verdict.to_json(),
    }
    if div is not None:
        record["div_phi_G"] = div
    if rep.kind == PERMUTATION:
        record["trivial_delta1_divides"] = trivial_d1.divides(deltas.delta1)
    return record, verdict


def _conclusion(status, mode, name):
    if status == OBSTRUCTED:
        if mode == "symplectic":
            return f"S^1 x N({name}) does not admit a symplectic structure"
        return f"N({name}) is not fibered in the class phi"
    return "no obstruction found"


def run_analyze(config):
    """Run the full pipeline; returns ``(report, exit_code)`` and writes the report if requested."""
    t_start = time.monotonic()
    with open(config.input_path, "rb") as fh:
        exterior = load_presentation(fh.read())
    if exterior.genus is None:
        raise MissingLongitude("the presentation must declare the knot genus")
    phash = exterior.content_hash()
    thurston = thurston_norm_from_genus(exterior.genus)

    alex = ordinary_alexander(exterior)
    baseline = baseline_check(alex, exterior.genus)
    surgery = surgery_presentation(exterior)
    phi = abelianization_phi(surgery)

    trivial_d1 = {}
    for p in config.primes:
        trivial_d1[p] = delta1(build_complex(surgery, None, Representation.trivial(p), phi))

    searches = []
    cache_info = []
    tasks = []
    incomplete = False
    t_search = time.monotonic()
    for group in config.groups:
        homs = None
        complete = True
        if config.cache_path:
            homs = cache_roundtrip(config.cache_path, phash, group)
            if homs is not None and not _valid_homs(surgery, homs):
                log.warning("cached homomorphisms for %s fail validation; searching again", group)
                homs = None
        from_cache = homs is not None
        if homs is None:
            try:
                homs = enumerate_epimorphisms(surgery, group, max_homs=config.max_homs,
                                              time_limit=config.time_limit, workers=config.workers)
            except LimitExceeded as exc:
                log.warning("%s search incomplete: %s", group, exc)
                homs = exc.partial
                complete = False
                incomplete = True
            if config.cache_path:
                cache_roundtrip(config.cache_path, phash, group, homs, complete)
        searches.append({"group": group.name, "order": group.order,
                         "homomorphisms": len(homs), "complete": complete})
        cache_info.append({"group": group.name, "from_cache": from_cache})
        for h in homs:
            for p in config.primes:
                if math.gcd(p, group.order) == 1:
                    tasks.append((surgery, phi, h, Representation.permutation(group, p),
                                  thurston, trivial_d1[p]))
                if group.order <= config.regular_max_order:
                    tasks.append((surgery, phi, h, Representation.regular(group, p),
                                  thurston, trivial_d1[p]))
    t_search = time.monotonic() - t_search

    t_eval = time.monotonic()
    if config.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_evaluate, tasks))
    else:
        results = [_evaluate(t) for t in tasks]
    t_eval = time.monotonic() - t_eval

    verdicts = [baseline] + [v for _, v in results]
    agg = aggregate(verdicts)
    note = agg.note if results else "no homomorphisms found"
    if incomplete:
        note += "; incomplete search"

    report = {
        "tool": "fibrcheck",
        "version": __version__,
        "mode": config.mode,
        "presentation": {
            "name": exterior.name,
            "hash": phash,
            "generators": exterior.num_generators,
            "relators": len(exterior.relators),
            "genus": exterior.genus,
        },
        "thurston_norm": thurston,
        "irreducibility": IRREDUCIBILITY_NOTE,
        "config": {
            "groups": [g.name for g in config.groups],
            "primes": list(config.primes),
            "max_homs": config.max_homs,
            "regular_max_order": config.regular_max_order,
        },
        "ordinary_alexander": {"poly": lp_normalize(alex).to_json(), "text": str(alex),
                               "degree": _degree_json(alex.degree())},
        "baseline": baseline.to_json(),
        "trivial_delta1": {str(p): d.to_json() for p, d in trivial_d1.items()},
        "searches": searches,
        "witnesses": [r for r, _ in results],
        "incomplete_search": incomplete,
        "aggregate": {
            "status": agg.status,
            "note": note,
            "conclusion": _conclusion(agg.status, config.mode, exterior.name),
        },
        "timing": {
            "total_seconds": round(time.monotonic() - t_start, 3),
            "search_seconds": round(t_search, 3),
            "evaluate_seconds": round(t_eval, 3),
            "cache": cache_info,
        },
    }
    if config.out_path:
        with open(config.out_path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    code = EXIT_OBSTRUCTED if agg.status == OBSTRUCTED else EXIT_CONSISTENT
    return report, code


def _int_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _str_list(text):
    return [x.strip() for x in text.split(",") if x.strip()]


def build_parser():
    parser = argparse.ArgumentParser(prog="fibrcheck", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="search epimorphisms and evaluate the degree criteria")
    a.add_argument("presentation", help="presentation JSON file")
    a.add_argument("--groups", type=_str_list, default=["S3", "S4", "S5", "A4"])
    a.add_argument("--primes", type=_int_list, default=[5, 7, 11, 13])
    a.add_argument("--mode", choices=["symplectic", "fibered"], default="symplectic")
    a.add_argument("--max-homs", type=int, default=DEFAULT_MAX_HOMS)
    a.add_argument("--workers", type=int, default=1)
    a.add_argument("--cache", default=None, help="epimorphism cache file")
    a.add_argument("--out", default=None, help="write the JSON report here")
    a.add_argument("--regular-max-order", type=int, default=DEFAULT_REGULAR_MAX_ORDER,
                   help="evaluate the regular representation for |G| up to this bound")
    a.add_argument("--time-limit", type=float, default=None,
                   help="wall-clock seconds per group search")
    return parser


def _setup_logging():
    level = os.environ.get("FIBRCHECK_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None):
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            input_path=args.presentation,
            groups=args.groups,
            primes=args.primes,
            mode=args.mode,
            max_homs=args.max_homs,
            workers=args.workers,
            cache_path=args.cache,
            out_path=args.out,
            regular_max_order=args.regular_max_order,
            time_limit=args.time_limit,
        )
        report, code = run_analyze(config)
    except FibrcheckError as exc:
        print(f"fibrcheck: error [{exc.module}]: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as exc:
        print(f"fibrcheck: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    agg = report["aggregate"]
    print(f"{report['presentation']['name']}: {agg['status']} ({agg['note']})")
    print(agg["conclusion"])
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands::

    semigalois analyze FILE.dfa
    semigalois variety generate|member|correspond|fo ...
    semigalois reconstruct FILE.monoid | --enumerate N

``--format structured`` prints JSON (UTF-8, two-space indent, sorted keys);
the default text format is the same tree rendered as indented lines, plus
timings where they apply.  Exit status is 0 when every command succeeded and
every verified property held, 1 when a check failed and 2 on input or
capacity errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import deque

from semigalois.actions import (
    DEFAULT_HOM_CAP,
    Signature,
    end_monoid,
    optimal_covering,
    roots,
    validate_action,
)
from semigalois.errors import ParseError, ReconstructionFailure, SemiGaloisError
from semigalois.galois import fundamental_monoid, galois_closure, reconstruct_check
from semigalois.languages import (
    DEFAULT_LANG_CAP,
    fo_witness,
    from_action,
    local_variety_generate,
    membership_witness,
    parse_regex,
    recognized_languages,
    stamp_to_action,
    syntactic_stamp,
    variety_correspondence_check,
)
from semigalois.monoid import (
    DEFAULT_CLOSURE_CAP,
    enumerate_monoids,
    idempotent_power,
    is_aperiodic,
    is_group,
    validate_monoid,
)

STAGE_TABLE_LIMIT = 32


# --- file formats -----------------------------------------------------------

def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, raw, line


def _int(token, lineno, raw):
    try:
        return int(token)
    except ValueError:
        col = raw.find(token) + 1 if token else None
        raise ParseError(f"expected an integer, got {token!r}", lineno, col) from None


def _value_column(raw):
    """1-based column of the first character after 'key:'."""
    colon = raw.find(":")
    rest = raw[colon + 1:]
    return colon + 2 + (len(rest) - len(rest.lstrip()))


def parse_dfa_text(text):
    """Parse the line-oriented DFA format into (action, start, accepts)."""
    alphabet = None
    n = None
    start = 0
    accepts = []
    edges = []
    for lineno, raw, line in _content_lines(text):
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected 'key: value'", lineno, 1)
        key = key.strip()
        tokens = rest.split()
        if key == "alphabet":
            alphabet = tuple(tokens)
            if not alphabet:
                raise ParseError("empty alphabet", lineno, len(raw))
        elif key == "states":
            if len(tokens) != 1:
                raise ParseError("'states' takes one integer", lineno, _value_column(raw))
            n = _int(tokens[0], lineno, raw)
        elif key == "trans":
            if len(tokens) != 3:
                raise ParseError("'trans' takes <state> <letter> <state>", lineno, _value_column(raw))
            edges.append((lineno, raw, _int(tokens[0], lineno, raw), tokens[1], _int(tokens[2], lineno, raw)))
        elif key == "start":
            start = _int(tokens[0] if tokens else "", lineno, raw)
        elif key == "accept":
            accepts = [_int(t, lineno, raw) for t in tokens]
        else:
            raise ParseError(f"unknown key {key!r}", lineno, raw.find(key) + 1)
    if alphabet is None or n is None:
        raise ParseError("missing 'alphabet' or 'states' line")
    trans = [[None] * n for _ in alphabet]
    for lineno, raw, s, letter, t in edges:
        if letter not in alphabet:
            raise ParseError(f"unknown letter {letter!r}", lineno, raw.find(letter) + 1)
        if not (0 <= s < n and 0 <= t < n):
            raise ParseError("state out of range", lineno, _value_column(raw))
        a = alphabet.index(letter)
        if trans[a][s] is not None and trans[a][s] != t:
            raise ParseError(f"conflicting transition for state {s} on {letter!r}", lineno, 1)
        trans[a][s] = t
    for a, col in enumerate(trans):
        for s, v in enumerate(col):
            if v is None:
                raise ParseError(f"missing transition from state {s} on {alphabet[a]!r}")
    if n and not 0 <= start < n:
        raise ParseError("start state out of range")
    if any(not 0 <= s < n for s in accepts):
        raise ParseError("accepting state out of range")
    action = validate_action(Signature.free(alphabet), trans, n_states=n)
    return action, start, tuple(sorted(set(accepts)))


def parse_monoid_text(text):
    order = identity = None
    rows = []
    for lineno, raw, line in _content_lines(text):
        if line.startswith("order:"):
            order = _int(line.split(":", 1)[1].strip(), lineno, raw)
        elif line.startswith("identity:"):
            identity = _int(line.split(":", 1)[1].strip(), lineno, raw)
        else:
            rows.append([_int(t, lineno, raw) for t in line.split()])
    if order is None or identity is None:
        raise ParseError("missing 'order' or 'identity' line")
    if len(rows) != order or any(len(r) != order for r in rows):
        raise ParseError(f"expected {order} rows of {order} entries")
    if any(not 0 <= v < order for r in rows for v in r) or not 0 <= identity < order:
        raise ParseError("table entry out of range")
    return validate_monoid(rows, identity)


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_dfa(path):
    return parse_dfa_text(_read(path))


def load_language(path):
    action, start, accepts = load_dfa(path)
    return from_action(action, start, accepts)


# --- report pieces ----------------------------------------------------------

def dump_language(lang):
    return {
        "states": lang.n_states,
        "start": lang.start,
        "accept": list(lang.accept),
        "trans": {a: list(t) for a, t in zip(lang.alphabet, lang.dfa.trans)},
    }


def dump_stamp(stamp):
    return {
        "order": stamp.target.order,
        "identity": stamp.target.identity,
        "letter_images": {a: g for a, g in zip(stamp.alphabet, stamp.letter_images)},
        "table": [list(r) for r in stamp.target.table],
    }


def _element_words(stamp):
    """A shortest word for each element of the stamp target."""
    x = stamp_to_action(stamp)
    words = {stamp.target.identity: ""}
    queue = deque([stamp.target.identity])
    while queue:
        s = queue.popleft()
        for a, tr in zip(stamp.alphabet, x.trans):
            if tr[s] not in words:
                words[tr[s]] = words[s] + a
                queue.append(tr[s])
    return words


def analyze_report(x, hom_cap, closure_cap):
    report = {"states": x.n, "alphabet": list(x.signature.alphabet)}
    rs = roots(x)
    report["rooted"] = bool(rs)
    report["roots"] = rs
    if x.n:
        covering, degree = optimal_covering(x)
        report["covering"] = [
            {"root": c.map[0], "states": sorted(c.map)} for c in covering.components
        ]
        report["root_degree"] = degree
    else:
        report["covering"] = []
        report["root_degree"] = 0
    end = end_monoid(x, hom_cap)
    report["end"] = {
        "order": end.order,
        "maps": [list(f) for f in end.elements],
        "table": [list(r) for r in end.table],
    }
    if x.n:
        gamma, _ = galois_closure(x, closure_cap)
        report["galois_closure_states"] = gamma.n
        stage = fundamental_monoid([x], closure_cap)
        m = stage.monoid.monoid
        stage_info = {
            "order": m.order,
            "identity": m.identity,
            "stamp": {a: g for a, g in zip(x.signature.alphabet, stage.stamp)},
            "group": is_group(m),
            "aperiodic": is_aperiodic(m),
        }
        if m.order <= STAGE_TABLE_LIMIT:
            stage_info["table"] = [list(r) for r in m.table]
        report["stage"] = stage_info
    return report


# --- commands ---------------------------------------------------------------

def cmd_analyze(args):
    x, _, _ = load_dfa(args.file)
    return analyze_report(x, args.hom_cap, args.closure_cap), True


def _collect_languages(regexes, files, alphabet):
    out = [parse_regex(r, alphabet) for r in regexes or []]
    out += [load_language(p) for p in files or []]
    return out


def _alphabet(args):
    return tuple(args.alphabet) if args.alphabet else None


def cmd_variety(args):
    alphabet = _alphabet(args)
    if args.mode == "fo":
        targets = _collect_languages(args.regex, args.dfa, alphabet)
        if len(targets) != 1:
            raise SemiGaloisError("fo needs exactly one --regex or --dfa")
        return fo_report(targets[0]), True
    gens = _collect_languages(args.gen, args.gen_dfa, alphabet)
    if args.mode == "generate":
        if not gens:
            raise SemiGaloisError("generate needs at least one --gen or --gen-dfa")
        v = local_variety_generate(gens, args.closure_cap)
        langs = recognized_languages(v.stamp, args.lang_cap)
        return {
            "alphabet": list(v.alphabet),
            "stamp": dump_stamp(v.stamp),
            "language_count": len(langs),
            "languages": [dump_language(l) for l in langs],
        }, True
    if args.mode == "member":
        targets = _collect_languages(args.regex, args.dfa, alphabet)
        if not gens or len(targets) != 1:
            raise SemiGaloisError("member needs generators and exactly one --regex or --dfa")
        v = local_variety_generate(gens, args.closure_cap)
        h = membership_witness(v, targets[0])
        return {
            "member": h is not None,
            "factoring_hom": list(h.map) if h is not None else None,
            "variety_order": v.stamp.target.order,
        }, True
    actions = [load_dfa(p)[0] for p in args.act_dfa or []]
    actions += [parse_regex(r, alphabet).dfa for r in args.act_regex or []]
    report = variety_correspondence_check(gens, actions, args.lang_cap)
    return {"checks": report, "all_pass": all(report.values())}, all(report.values())


def fo_report(lang):
    stamp, _ = syntactic_stamp(lang)
    witness = fo_witness(lang)
    out = {"fo_definable": witness is None, "syntactic_order": stamp.target.order}
    if witness is not None:
        m = stamp.target
        w = idempotent_power(m, witness)
        out["witness"] = {
            "element": witness,
            "word": _element_words(stamp)[witness],
            "omega_power": w,
            "omega_plus_one": m.table[w][witness],
        }
    else:
        out["witness"] = None
    return out


def _reconstruct_one(m, hom_cap):
    t0 = time.perf_counter()
    rec = reconstruct_check(m, hom_cap)
    elapsed = time.perf_counter() - t0
    entry = {
        "order": m.order,
        "gamma_states": rec.gamma.n,
        "end_order": rec.end.order,
        "iso": "yes",
        "lambda": list(rec.iso.map),
    }
    return entry, elapsed


def cmd_reconstruct(args, timings):
    if args.enumerate is not None:
        if not 1 <= args.enumerate <= 4:
            raise SemiGaloisError("--enumerate takes an order between 1 and 4")
        monoids = enumerate_monoids(args.enumerate)
    elif args.file:
        monoids = [parse_monoid_text(_read(args.file))]
    else:
        raise SemiGaloisError("reconstruct needs a monoid file or --enumerate")
    entries = []
    for m in monoids:
        entry, elapsed = _reconstruct_one(m, args.hom_cap)
        entries.append(entry)
        timings.append(elapsed)
    report = {"monoids": entries, "count": len(entries), "all_iso": True}
    if args.enumerate is not None:
        report["enumerated_order"] = args.enumerate
    return report, True


# --- rendering --------------------------------------------------------------

def render_structured(report):
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _render_text(value, indent, lines, key=None):
    pad = "  " * indent
    head = f"{pad}{key}:" if key is not None else pad.rstrip()
    if isinstance(value, dict):
        if key is not None:
            lines.append(head)
        for k in sorted(value):
            _render_text(value[k], indent + (key is not None), lines, k)
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        lines.append(head)
        for i, v in enumerate(value):
            _render_text(v, indent + 1, lines, f"[{i}]")
    else:
        if isinstance(value, bool):
            shown = "yes" if value else "no"
        elif isinstance(value, list):
            shown = " ".join(str(v) for v in value) if value else "-"
        elif value is None:
            shown = "-"
        else:
            shown = str(value)
        lines.append(f"{head} {shown}" if key is not None else f"{pad}{shown}")


def render_text(report):
    lines = []
    _render_text(report, 0, lines)
    return "\n".join(lines) + "\n"


def build_parser():
    parser = argparse.ArgumentParser(prog="semigalois", description=__doc__.split("\n")[0])
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--hom-cap", type=int, default=DEFAULT_HOM_CAP)
    parser.add_argument("--closure-cap", type=int, default=DEFAULT_CLOSURE_CAP)
    parser.add_argument("--lang-cap", type=int, default=DEFAULT_LANG_CAP)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="categorical report on a DFA file")
    p.add_argument("file")

    p = sub.add_parser("variety", help="local varieties generated by languages and actions")
    p.add_argument("mode", choices=("generate", "member", "correspond", "fo"))
    p.add_argument("--alphabet", help="letters, e.g. 'ab' (default: letters used)")
    p.add_argument("--gen", action="append", help="generating regex (repeatable)")
    p.add_argument("--gen-dfa", action="append", help="generating DFA file (repeatable)")
    p.add_argument("--regex", action="append", help="language to test")
    p.add_argument("--dfa", action="append", help="DFA file of the language to test")
    p.add_argument("--act-dfa", action="append", help="generating action as a DFA file")
    p.add_argument("--act-regex", action="append", help="generating action: minimal DFA of a regex")

    p = sub.add_parser("reconstruct", help="check M = End of its regular galois object")
    p.add_argument("file", nargs="?")
    p.add_argument("--enumerate", type=int, metavar="N")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for cap in ("hom_cap", "closure_cap", "lang_cap"):
        if getattr(args, cap) < 1:
            parser.error(f"--{cap.replace('_', '-')} must be positive")
    timings = []
    try:
        if args.command == "analyze":
            report, ok = cmd_analyze(args)
        elif args.command == "variety":
            report, ok = cmd_variety(args)
        else:
            report, ok = cmd_reconstruct(args, timings)
    except ReconstructionFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SemiGaloisError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "structured":
        sys.stdout.write(render_structured(report))
    else:
        out = render_text(report)
        if timings:
            out += f"elapsed_seconds: {sum(timings):.4f}\n"
        sys.stdout.write(out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

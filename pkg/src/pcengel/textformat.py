"""Line-based text format for presentations and automorphisms.

    group <name>
    gen <sym> <prime>
    pow <sym> = <word>
    conj <b> <a> = <word>        # b^a = word, a before b
    end
    aut <name> on <group>
    <sym> -> <word>
    end

Blank lines and ``#`` comments are ignored.  Words are ``eps`` or
``*``-separated ``sym^int`` syllables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .automorphism import Automorphism, automorphism_from_images
from .errors import InputError, ParseError
from .pcgroup import PcPresentation, format_word, is_prime, parse_word


@dataclass
class ParsedFile:
    groups: dict[str, PcPresentation] = field(default_factory=dict)
    automorphisms: dict[str, dict[str, Automorphism]] = field(default_factory=dict)


def parse_text(text: str, source: str = "<string>") -> ParsedFile:
    out = ParsedFile()
    block = None  # ("group", name, gens, pows, conjs, line) or ("aut", name, group, images, line)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        def fail(msg):
            raise ParseError(msg, line=lineno, source=source)

        toks = line.split()
        head = toks[0]
        if block is None:
            if head == "group" and len(toks) == 2:
                if toks[1] in out.groups:
                    fail(f"duplicate group {toks[1]!r}")
                block = ["group", toks[1], [], {}, {}, lineno]
            elif head == "aut" and len(toks) == 4 and toks[2] == "on":
                if toks[3] not in out.groups:
                    fail(f"automorphism of unknown group {toks[3]!r}")
                block = ["aut", toks[1], toks[3], {}, lineno]
            else:
                fail(f"expected 'group <name>' or 'aut <name> on <group>', got {line!r}")
            continue
        if head == "end" and len(toks) == 1:
            try:
                _close(block, out)
            except InputError as exc:
                raise ParseError(str(exc), line=block[-1], source=source) from exc
            block = None
            continue
        if block[0] == "group":
            _, _, gens, pows, conjs, _ = block
            syms = [s for s, _ in gens]
            if head == "gen":
                if len(toks) != 3 or not toks[2].lstrip("-").isdigit():
                    fail("expected 'gen <sym> <prime>'")
                if toks[1] in syms:
                    fail(f"duplicate generator {toks[1]!r}")
                if not is_prime(int(toks[2])):
                    fail(f"relative order {toks[2]} of {toks[1]} is not prime")
                gens.append((toks[1], int(toks[2])))
            elif head == "pow":
                if len(toks) < 4 or toks[2] != "=":
                    fail("expected 'pow <sym> = <word>'")
                _check_word(" ".join(toks[3:]), syms, fail)
                if toks[1] not in syms:
                    fail(f"unknown generator {toks[1]!r}")
                pows[toks[1]] = " ".join(toks[3:])
            elif head == "conj":
                if len(toks) < 5 or toks[3] != "=":
                    fail("expected 'conj <sym> <sym> = <word>'")
                for s in toks[1:3]:
                    if s not in syms:
                        fail(f"unknown generator {s!r}")
                _check_word(" ".join(toks[4:]), syms, fail)
                conjs[(toks[1], toks[2])] = " ".join(toks[4:])
            else:
                fail(f"unexpected {head!r} inside group block")
        else:
            _, _, gname, images, _ = block
            syms = out.groups[gname].generators
            if len(toks) < 3 or toks[1] != "->":
                fail("expected '<sym> -> <word>'")
            if toks[0] not in syms:
                fail(f"unknown generator {toks[0]!r}")
            _check_word(" ".join(toks[2:]), syms, fail)
            images[toks[0]] = " ".join(toks[2:])
    if block is not None:
        raise ParseError(f"unterminated {block[0]} block {block[1]!r}", line=block[-1], source=source)
    return out


def _check_word(text, syms, fail):
    try:
        parse_word(text, syms)
    except InputError as exc:
        fail(str(exc))


def _close(block, out: ParsedFile) -> None:
    if block[0] == "group":
        _, name, gens, pows, conjs, _ = block
        if not gens:
            raise InputError(f"group {name!r} has no generators")
        out.groups[name] = PcPresentation.from_relations(name, gens, powers=pows, conjugates=conjs)
    else:
        _, name, gname, images, _ = block
        g = out.groups[gname]
        missing = [s for s in g.generators if s not in images]
        if missing:
            raise InputError(f"automorphism {name!r} lacks images for {', '.join(missing)}")
        aut = automorphism_from_images(g, [images[s] for s in g.generators], name=name)
        out.automorphisms.setdefault(gname, {})[name] = aut


def parse_file(path: str | Path) -> ParsedFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_text(text, source=str(path))


def serialize_group(g: PcPresentation) -> str:
    syms = g.generators
    lines = [f"group {g.name}"]
    lines += [f"gen {s} {r}" for s, r in zip(syms, g.relative_orders)]
    for s, w in zip(syms, g.power_relations):
        if w:
            lines.append(f"pow {s} = {format_word(w, syms)}")
    for (i, j), w in g.conjugation_relations:
        if w != ((j, 1),):
            lines.append(f"conj {syms[j]} {syms[i]} = {format_word(w, syms)}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def serialize_automorphism(phi: Automorphism) -> str:
    g = phi.group
    lines = [f"aut {phi.name} on {g.name}"]
    lines += [f"{s} -> {y.word()}" for s, y in zip(g.generators, phi.images)]
    lines.append("end")
    return "\n".join(lines) + "\n"


def serialize(g: PcPresentation, automorphisms=()) -> str:
    return serialize_group(g) + "".join(serialize_automorphism(a) for a in automorphisms)

"""Config files (INI sections, all numbers as ``p/q``) and report (de)serialization.

System / family file::

    [base]
    alphabet = 2
    forbidden = 22            ; or: matrix = 11 10

    [fibres]
    1 = tent
    2 = [(0,1),(1/2,0),(1,1)]

A single-map file has ``[map]`` with ``nodes = ...``. A segments file has an
optional ``[witness]`` section (``eps``, ``anchor``) and one
``[segment N]`` section per segment with ``base``, ``x`` and ``length``.
"""

import configparser
import json
import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .errors import ConfigError, SkewSpecError
from .numeric import UnitInterval, parse_rational
from .pwl import NAMED_MAPS, PwlMap
from .skew import OrbitSegmentSpec, SkewPoint, SkewSystem, TracingAudit
from .subshift import BasePoint, Sft, parse_word

_NODE = re.compile(r"\(\s*\"?([^,()\"]+)\"?\s*,\s*\"?([^,()\"]+)\"?\s*\)")


def parse_map(text: str) -> PwlMap:
    """A named map (``tent``, ``valley``, ``zigzag3``, ``identity``) or a node list."""
    s = text.strip()
    if s in NAMED_MAPS:
        return NAMED_MAPS[s]()
    nodes = _NODE.findall(s)
    if not nodes:
        raise ValueError(f"expected a map name or a node list like [(0,0),(1/2,1),(1,0)], got {text!r}")
    return PwlMap([(parse_rational(a), parse_rational(b)) for a, b in nodes])


class _Source:
    """Parsed INI file that can point at the line of an offending key."""

    def __init__(self, path):
        self.path = Path(path)
        try:
            self.text = self.path.read_text()
        except OSError as exc:
            raise ConfigError(f"{path}: cannot read ({exc.strerror})") from None
        self.cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
        self.cp.optionxform = str
        try:
            self.cp.read_string(self.text, source=str(path))
        except configparser.Error as exc:
            raise ConfigError(f"{path}: {exc}") from None

    def line_of(self, section: str, key: Optional[str] = None) -> int:
        in_section = False
        for no, line in enumerate(self.text.splitlines(), 1):
            stripped = line.strip()
            if stripped.startswith("["):
                in_section = stripped == f"[{section}]"
                if in_section and key is None:
                    return no
                continue
            if in_section and key is not None and re.match(rf"{re.escape(key)}\s*[=:]", stripped):
                return no
        return 0

    def fail(self, section: str, key: Optional[str], msg: str):
        raise ConfigError(f"{self.path}:{self.line_of(section, key)}: [{section}] "
                          f"{key + ': ' if key else ''}{msg}")

    def get(self, section: str, key: str, parse, default=None):
        if not self.cp.has_option(section, key):
            if default is not None:
                return default
            self.fail(section, None, f"missing key {key!r}")
        raw = self.cp.get(section, key)
        try:
            return parse(raw)
        except (ValueError, SkewSpecError) as exc:
            self.fail(section, key, str(exc))


def _parse_matrix(text: str) -> Tuple[Tuple[bool, ...], ...]:
    rows = text.split()
    if any(set(r) - {"0", "1"} for r in rows):
        raise ValueError("matrix rows are strings of 0/1, separated by spaces")
    return tuple(tuple(c == "1" for c in r) for r in rows)


def _load_sft(src: _Source) -> Sft:
    if not src.cp.has_section("base"):
        raise ConfigError(f"{src.path}: missing [base] section")
    n = src.get("base", "alphabet", int)
    try:
        if src.cp.has_option("base", "matrix"):
            return Sft(n, src.get("base", "matrix", _parse_matrix))
        forbidden = src.cp.get("base", "forbidden", fallback="").replace(",", " ").split()
        return Sft.from_forbidden(n, forbidden)
    except SkewSpecError as exc:
        src.fail("base", None, str(exc))


def _load_fibres(src: _Source) -> Tuple[PwlMap, ...]:
    sec = "fibres" if src.cp.has_section("fibres") else "maps"
    if not src.cp.has_section(sec):
        raise ConfigError(f"{src.path}: missing [fibres] section")
    keys = list(src.cp[sec].keys())
    expected = [str(i) for i in range(1, len(keys) + 1)]
    if sorted(keys, key=lambda k: (len(k), k)) != expected:
        src.fail(sec, None, f"keys must be 1..{len(keys)}, got {', '.join(keys)}")
    maps = []
    for k in expected:
        T = src.get(sec, k, parse_map)
        T.name = T.name or f"T{k}"
        maps.append(T)
    return tuple(maps)


def load_map(path) -> PwlMap:
    src = _Source(path)
    if src.cp.has_section("map"):
        return src.get("map", "nodes", parse_map)
    return _load_fibres(src)[0]


def load_maps(path) -> Dict[str, PwlMap]:
    src = _Source(path)
    if src.cp.has_section("map"):
        return {"map": src.get("map", "nodes", parse_map)}
    return {str(i): T for i, T in enumerate(_load_fibres(src), 1)}


def load_family(path) -> Tuple[PwlMap, ...]:
    return _load_fibres(_Source(path))


def load_sft(path) -> Sft:
    return _load_sft(_Source(path))


def load_system(path) -> SkewSystem:
    src = _Source(path)
    base = _load_sft(src)
    fibres = _load_fibres(src)
    try:
        return SkewSystem(base, fibres)
    except SkewSpecError as exc:
        src.fail("fibres", None, str(exc))


def load_segments(path) -> Tuple[List[OrbitSegmentSpec], dict]:
    """Segments in file order plus the optional ``[witness]`` settings."""
    src = _Source(path)
    segs = []
    names = [s for s in src.cp.sections() if s.split()[0] == "segment"]
    if not names:
        raise ConfigError(f"{path}: no [segment N] sections")
    for name in names:
        base = src.get(name, "base", BasePoint.parse)
        x = src.get(name, "x", parse_rational)
        n = src.get(name, "length", int)
        try:
            segs.append(OrbitSegmentSpec(SkewPoint(base, x), n))
        except SkewSpecError as exc:
            src.fail(name, None, str(exc))
    settings = {}
    if src.cp.has_section("witness"):
        if src.cp.has_option("witness", "eps"):
            settings["eps"] = src.get("witness", "eps", parse_rational)
        if src.cp.has_option("witness", "anchor"):
            settings["anchor"] = src.get("witness", "anchor", parse_word)
    return segs, settings


# -- reports -----------------------------------------------------------------

def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def system_from_json(data) -> SkewSystem:
    base = data["base"]
    sft = Sft(base["alphabet"], tuple(tuple(bool(v) for v in row) for row in base["matrix"]))
    fibres = tuple(PwlMap([(parse_rational(a), parse_rational(b)) for a, b in nodes])
                   for nodes in data["fibres"])
    return SkewSystem(sft, fibres)


def segments_from_json(data) -> List[OrbitSegmentSpec]:
    return [
        OrbitSegmentSpec(SkewPoint(BasePoint.parse(s["base"]), parse_rational(s["x"])), s["length"])
        for s in data
    ]


def load_report(path) -> dict:
    """Parse a witness report JSON into typed values (no recomputation)."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ConfigError(f"{path}: unreadable report ({exc})") from None
    try:
        return {
            "eps": parse_rational(data["eps"]),
            "M": int(data["M"]),
            "gaps": list(data.get("gaps") or []),
            "eta": BasePoint.parse(data["eta"]),
            "z": parse_rational(data["z"]),
            "J": [UnitInterval.from_json(J) for J in data["J"]],
            "Knested": [UnitInterval.from_json(K) for K in data["Knested"]],
            "audit": TracingAudit.from_json(data["audit"]),
            "system": system_from_json(data["system"]),
            "segments": segments_from_json(data["segments"]),
            "raw": data,
        }
    except (KeyError, TypeError, ValueError, SkewSpecError) as exc:
        raise ConfigError(f"{path}: malformed report ({exc})") from None

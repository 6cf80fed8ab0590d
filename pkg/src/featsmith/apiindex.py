"""Declarative index of a library's types, methods, and constants.

Loaded from a JSON signature file (no reflection or classpath involvement),
this is the single source of type facts: data-flow annotation, hole typing,
and synthesis all resolve against it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

SCALARS = {
    "void", "boolean", "byte", "short", "int", "long", "float", "double",
    "char", "String", "null",
}


class APIIndexError(ValueError):
    pass


@dataclass(frozen=True)
class APIMethod:
    owner: str
    name: str
    params: tuple[str, ...]
    returns: str
    constructor: bool = False

    @property
    def qualified(self) -> str:
        return f"{self.owner}.{self.name}"


@dataclass(frozen=True)
class APIConstant:
    owner: str
    name: str
    type: str

    @property
    def qualified(self) -> str:
        return f"{self.owner}.{self.name}"


class APIIndex:
    def __init__(
        self,
        library: str,
        types: dict[str, tuple[str, ...]],
        methods: list[APIMethod],
        constants: list[APIConstant] = (),
    ):
        self.library = library
        self.types = dict(types)
        self.methods = list(methods)
        self.constants = {c.qualified: c for c in constants}
        self._validate()
        self._by_name: dict[str, list[APIMethod]] = {}
        for m in self.methods:
            self._by_name.setdefault(m.name, []).append(m)

    def _validate(self) -> None:
        def known(t: str) -> bool:
            base = t.split("<")[0]
            return base in self.types or t in SCALARS or base in SCALARS

        for t, supers in self.types.items():
            for s in supers:
                if s not in self.types:
                    raise APIIndexError(f"type {t}: unknown supertype {s}")
        for m in self.methods:
            for t in (m.owner, m.returns, *m.params):
                if not known(t):
                    raise APIIndexError(f"method {m.qualified}: unknown type {t}")
        for c in self.constants.values():
            if not known(c.owner) or not known(c.type):
                raise APIIndexError(f"constant {c.qualified}: unknown type")

    # -- type relations ----------------------------------------------------
    def supertypes(self, t: str) -> set[str]:
        out: set[str] = set()
        frontier = [t]
        while frontier:
            cur = frontier.pop()
            for s in self.types.get(cur, ()):
                if s not in out:
                    out.add(s)
                    frontier.append(s)
        return out

    def assignable(self, actual: str, expected: str) -> bool:
        """actual fits where expected is required, via identity or up-cast."""
        if actual == expected:
            return True
        if expected in self.supertypes(actual):
            return True
        # literal int sources widen into the other integral scalars
        if actual == "int" and expected in ("short", "long", "byte", "float", "double"):
            return True
        return False

    def is_scalar(self, t: str) -> bool:
        return t in SCALARS

    def lookup_method(self, owner: str, name: str) -> APIMethod | None:
        """Resolve a method on `owner` or any of its supertypes."""
        candidates = self._by_name.get(name, ())
        for m in candidates:
            if m.owner == owner:
                return m
        supers = self.supertypes(owner)
        for m in candidates:
            if m.owner in supers:
                return m
        return None

    def methods_named(self, name: str) -> list[APIMethod]:
        return list(self._by_name.get(name, ()))

    def constructors_of(self, type_name: str) -> list[APIMethod]:
        return [m for m in self.methods if m.constructor and m.owner == type_name]

    def constant_type(self, qualified: str) -> str | None:
        c = self.constants.get(qualified)
        return c.type if c else None

    def constants_of_type(self, type_name: str) -> list[APIConstant]:
        return sorted(
            (c for c in self.constants.values() if c.type == type_name),
            key=lambda c: c.qualified,
        )

    def member_names(self) -> set[str]:
        out = set(self.types)
        out.update(m.name for m in self.methods)
        out.update(c.name for c in self.constants.values())
        return out

    # -- serialization -------------------------------------------------------
    @classmethod
    def from_dict(cls, raw: dict) -> "APIIndex":
        types = {t["name"]: tuple(t.get("supertypes", ())) for t in raw.get("types", [])}
        methods = [
            APIMethod(
                owner=m["owner"],
                name=m["name"],
                params=tuple(m.get("params", ())),
                returns=m.get("returns", "void"),
                constructor=bool(m.get("constructor", False)),
            )
            for m in raw.get("methods", [])
        ]
        constants = [
            APIConstant(owner=c["owner"], name=c["name"], type=c["type"])
            for c in raw.get("constants", [])
        ]
        return cls(raw.get("library", ""), types, methods, constants)

    @classmethod
    def load(cls, path: str | Path) -> "APIIndex":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_dict(self) -> dict:
        return {
            "library": self.library,
            "types": [
                {"name": t, "supertypes": list(s)} for t, s in sorted(self.types.items())
            ],
            "methods": [
                {
                    "owner": m.owner,
                    "name": m.name,
                    "params": list(m.params),
                    "returns": m.returns,
                    "constructor": m.constructor,
                }
                for m in sorted(self.methods, key=lambda m: (m.owner, m.name, m.params))
            ],
            "constants": [
                {"owner": c.owner, "name": c.name, "type": c.type}
                for c in sorted(self.constants.values(), key=lambda c: c.qualified)
            ],
        }

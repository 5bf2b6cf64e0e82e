"""Shared handler plumbing: controller back-reference and flag converters"""

import json
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Dict, List, Tuple

from core.command import CommandOutput, CommandSpec, Flag, parse_bool
from modules.bc_core import BCElement, QZElt
from modules.cyclotomic import RootOfUnity
from modules.habiro import HabiroElt, parse_poly, reduce


def parse_int_list(text: str) -> List[int]:
    """``"2,-1,-2"`` or ``"[2, -1, -2]"``"""
    items = text.strip().strip("[]")
    return [int(v) for v in items.split(",")] if items.strip() else []


def parse_fraction_list(text: str) -> List[Fraction]:
    items = text.strip().strip("[]")
    return [Fraction(v.strip().strip('"')) for v in items.split(",")] if items.strip() else []


def parse_qz(text: str) -> QZElt:
    """JSON ``[{"r": "1/2", "c": "3"}]`` or compact ``"1/2:3, 1/3"`` (coefficient 1)"""
    text = text.strip()
    if text.startswith("["):
        return QZElt.from_dict(json.loads(text))
    terms: List[Tuple[Fraction, Fraction]] = []
    for part in text.split(","):
        if not part.strip():
            continue
        r, _, c = part.partition(":")
        terms.append((Fraction(r.strip()), Fraction(c.strip() or "1")))
    return QZElt.from_map(terms)


def parse_bc(text: str) -> BCElement:
    """JSON list of {"left", "mid", "right", "coeff"} monomials"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"expected a JSON list of monomials: {exc}") from exc
    if isinstance(data, dict):
        data = [data]
    for item in data:
        if isinstance(item.get("mid"), str):
            item["mid"] = parse_qz(item["mid"]).to_dict()
        item.setdefault("mid", QZElt.one().to_dict())
    return BCElement.from_dict(data)


def habiro_flags(level_default=None) -> List[Flag]:
    return [
        Flag("f", parse_poly, help='polynomial in q, e.g. "1 - q - q^2 + q^3"'),
        Flag("level", int, level_default, help="Habiro level N"),
    ]


def habiro_from(cmd) -> HabiroElt:
    return reduce(cmd["f"], cmd["level"])


ROOT = Flag("zeta", RootOfUnity.parse, help="root of unity a/b")


def switch(name: str, help: str = "", default: str = "false") -> Flag:
    """Boolean flag; a bare ``--name`` means true"""
    return Flag(name, parse_bool, default, help, boolean=True)


class BaseHandler(ABC):
    """One subcommand group; holds the controller like the other handlers"""

    group: str
    aliases: Tuple[str, ...] = ()

    def __init__(self, controller):
        self.controller = controller
        self.config = controller.config

    @abstractmethod
    def commands(self) -> Dict[str, CommandSpec]:
        """Action name -> spec"""

    @staticmethod
    def exact(result) -> CommandOutput:
        return CommandOutput(result, True)

    @staticmethod
    def numeric(result, table=None) -> CommandOutput:
        return CommandOutput(result, False, table)

"""Parsed command-line invocations and usage errors"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional


class UsageError(Exception):
    """Malformed invocation; the CLI exits with code 2"""

    def __init__(self, message: str, flag: Optional[str] = None, position: Optional[int] = None):
        super().__init__(message)
        self.flag = flag
        self.position = position

    @property
    def name(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict:
        return {"error": self.name, "message": str(self), "flag": self.flag, "position": self.position}


class UnknownSubcommand(UsageError):
    pass


class BadFlagValue(UsageError):
    pass


_TRUTHY = {"1", "true", "yes", "on"}
_FALSY = {"0", "false", "no", "off"}


def parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in _TRUTHY:
        return True
    if value in _FALSY:
        return False
    raise ValueError(f"expected a boolean, got '{text}'")


@dataclass
class Flag:
    """One ``--name value`` option; ``default=None`` marks it required"""

    name: str
    convert: Callable[[str], Any] = str
    default: Optional[Any] = None
    help: str = ""
    boolean: bool = False

    @property
    def dest(self) -> str:
        return self.name.replace("-", "_")

    @property
    def required(self) -> bool:
        return self.default is None


@dataclass
class CommandOutput:
    result: Any
    exact: bool
    table: Optional[List[dict]] = None
    code: int = 0


@dataclass
class CommandSpec:
    handler: Callable[["Command"], CommandOutput]
    flags: List[Flag] = field(default_factory=list)
    help: str = ""


@dataclass
class Command:
    """A validated invocation: subcommand path, flag strings and converted values"""

    path: str
    flags: Dict[str, str]
    output: str = "json"
    values: Dict[str, Any] = field(default_factory=dict, repr=False)

    @property
    def group(self) -> str:
        return self.path.split(".", 1)[0]

    @property
    def action(self) -> str:
        return self.path.split(".", 1)[1]

    def __getitem__(self, name: str) -> Any:
        return self.values[name.replace("-", "_")]

    def config_echo(self) -> Dict[str, str]:
        return dict(self.flags)

    def to_dict(self) -> dict:
        return {"path": self.path, "flags": self.config_echo(), "output": self.output}

"""Core controller that turns argv into module calls and serialized results"""

import argparse
import json
import logging
import re
import sys
import warnings
from typing import Dict, List, Optional, Sequence, Tuple

from config.settings import AppConfig
from core.command import BadFlagValue, Command, CommandSpec, UnknownSubcommand, UsageError
from core.handlers import (
    BCHandler,
    BraidHandler,
    HabiroHandler,
    MultiHandler,
    MZVHandler,
    QSMHandler,
    ReproHandler,
    WittHandler,
)
from modules.errors import ConvergenceWarning, ToolkitError
from modules.formatters import FormatterFactory
from modules.suites import (
    AlgebraSuite,
    BraidSuite,
    MultivarSuite,
    MZVSuite,
    QSMSuite,
    SuiteReport,
    SuiteService,
    WittSuite,
)

logger = logging.getLogger(__name__)

_FLAG = re.compile(r"(--[\w-]+)")


class CommandParser(argparse.ArgumentParser):
    """argparse front end that raises instead of exiting"""

    def error(self, message: str):
        match = _FLAG.search(message)
        raise BadFlagValue(message, flag=match.group(1) if match else None)


def _value_position(argv: Sequence[str], name: str) -> Optional[int]:
    for i, token in enumerate(argv):
        if token == f"--{name}":
            return i + 1
        if token.startswith(f"--{name}="):
            return i
    return None


class Controller:
    """Main controller that coordinates handlers, suites and formatters"""

    def __init__(self, config: AppConfig):
        self.config = config

        # Suites first: the repro handler lists them
        self._init_modules()
        self._init_handlers()
        self._setup_commands()

    def _init_modules(self):
        self.suite_service = SuiteService(self)
        for suite_cls in (AlgebraSuite, QSMSuite, MultivarSuite, WittSuite, MZVSuite, BraidSuite):
            self.suite_service.register(suite_cls(self))
        self.error_formatter = FormatterFactory.create("json", schema=self.config.output.schema)

    def _init_handlers(self):
        self.habiro_handler = HabiroHandler(self)
        self.bc_handler = BCHandler(self)
        self.qsm_handler = QSMHandler(self)
        self.multi_handler = MultiHandler(self)
        self.witt_handler = WittHandler(self)
        self.mzv_handler = MZVHandler(self)
        self.braid_handler = BraidHandler(self)
        self.repro_handler = ReproHandler(self)

    def _setup_commands(self):
        handlers = [
            self.habiro_handler,
            self.bc_handler,
            self.qsm_handler,
            self.multi_handler,
            self.witt_handler,
            self.mzv_handler,
            self.braid_handler,
            self.repro_handler,
        ]
        self.groups: Dict[str, List[str]] = {}
        self.aliases: Dict[str, str] = {}
        self.commands: Dict[str, CommandSpec] = {}
        for handler in handlers:
            specs = handler.commands()
            self.groups[handler.group] = list(specs)
            for alias in handler.aliases:
                self.aliases[alias] = handler.group
            for action, spec in specs.items():
                self.commands[f"{handler.group}.{action}"] = spec
        logger.debug(f"Registered {len(self.commands)} commands in {len(self.groups)} groups")

    # Command-line surface

    def usage(self) -> str:
        lines = ["usage: main.py <group> <action> [--flag value ...] [--format json|csv]", ""]
        for group, actions in self.groups.items():
            alias = [a for a, g in self.aliases.items() if g == group]
            label = f"{group} ({', '.join(alias)})" if alias else group
            lines.append(f"  {label}: {', '.join(actions)}")
        return "\n".join(lines)

    def _leaf_parser(self, path: str, spec: CommandSpec) -> CommandParser:
        parser = CommandParser(
            prog=f"main.py {path.replace('.', ' ')}",
            description=spec.help,
            allow_abbrev=False,
        )
        for flag in spec.flags:
            kwargs = {"dest": flag.dest, "default": None, "help": flag.help}
            if flag.boolean:
                kwargs.update(nargs="?", const="true")
            parser.add_argument(f"--{flag.name}", **kwargs)
        parser.add_argument("--format", dest="format", default=None, help="json or csv")
        return parser

    def parse(self, argv: Sequence[str]) -> Command:
        argv = list(argv)
        if not argv:
            raise UnknownSubcommand("missing subcommand", position=0)
        group = self.aliases.get(argv[0], argv[0])
        if group not in self.groups:
            raise UnknownSubcommand(f"unknown subcommand '{argv[0]}'", position=0)
        if len(argv) < 2 or argv[1].startswith("-"):
            raise UnknownSubcommand(
                f"'{argv[0]}' needs an action: {', '.join(self.groups[group])}", position=1
            )
        path = f"{group}.{argv[1]}"
        if path not in self.commands:
            raise UnknownSubcommand(
                f"unknown action '{argv[1]}' for '{argv[0]}' (expected one of {self.groups[group]})",
                position=1,
            )
        spec = self.commands[path]

        try:
            namespace = self._leaf_parser(path, spec).parse_args(argv[2:])
        except BadFlagValue as e:
            if e.flag and e.position is None:
                e.position = _value_position(argv, e.flag[2:])
            raise

        flags: Dict[str, str] = {}
        values = {}
        for flag in spec.flags:
            raw = getattr(namespace, flag.dest)
            if raw is None:
                if flag.required:
                    raise BadFlagValue(f"missing required flag --{flag.name}", flag=f"--{flag.name}")
                raw = str(flag.default)
            flags[flag.name] = raw
            try:
                values[flag.dest] = flag.convert(raw)
            except ToolkitError:
                raise
            except (ValueError, TypeError, ZeroDivisionError) as e:
                raise BadFlagValue(
                    f"invalid value for --{flag.name}: {raw!r} ({e})",
                    flag=f"--{flag.name}",
                    position=_value_position(argv, flag.name),
                ) from e

        output = (namespace.format or self.config.output.format).lower()
        try:
            FormatterFactory.validate_format(output)
        except ValueError as e:
            raise BadFlagValue(str(e), flag="--format", position=_value_position(argv, "format")) from e
        return Command(path, flags, output, values)

    def run(self, cmd: Command) -> Tuple[int, str]:
        """Dispatch a parsed command; returns (exit code, serialized output)"""
        spec = self.commands[cmd.path]
        formatter = FormatterFactory.create(cmd.output, schema=self.config.output.schema)
        logger.info(f"Running {cmd.path} with {cmd.flags}")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", ConvergenceWarning)
            try:
                output = spec.handler(cmd)
            except ValueError as e:
                name = e.name if isinstance(e, ToolkitError) else type(e).__name__
                logger.error(f"{cmd.path} failed with {name}: {e}")
                return 1, self.error_formatter.format_error(name, str(e))
        notes = [str(w.message) for w in caught if issubclass(w.category, ConvergenceWarning)]
        extra = {"warnings": notes} if notes else None
        if output.table is not None and cmd.output == "csv":
            return output.code, formatter.format_table(output.table)
        return output.code, formatter.format_result(cmd.path, cmd.config_echo(), output.result, output.exact, extra)

    def repro(self, suite: str) -> SuiteReport:
        return self.suite_service.run(suite)

    def main(self, argv: Sequence[str]) -> int:
        """Parse, run and print; the return value is the process exit code"""
        argv = list(argv)
        if not argv or argv[0] in ("-h", "--help"):
            print(self.usage(), file=sys.stdout if argv else sys.stderr)
            return 0 if argv else 2
        try:
            cmd = self.parse(argv)
        except UsageError as e:
            logger.error(f"Usage error: {e}")
            print(json.dumps(e.to_dict()), file=sys.stderr)
            return 2
        except ToolkitError as e:
            print(self.error_formatter.format_error(e.name, str(e)))
            return 1
        except SystemExit as e:
            # argparse --help
            return int(e.code or 0)
        code, text = self.run(cmd)
        print(text)
        return code

"""Shared plumbing of the workbench management commands."""

from __future__ import annotations

import logging
import sys
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from workbench.exceptions import InputError, WorkbenchError
from workbench.grammars import Grammar, VariableMode, parse_grammar
from workbench.pushdown import Pds, parse_pds
from workbench.serializers import render_json
from workbench.syntax import parse_term
from workbench.terms import TermRef

logger = logging.getLogger(__name__)


def read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding='utf-8')
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f'cannot read {path}: {exc}') from None


def file_kind(text: str) -> str:
    for raw in text.splitlines():
        line = raw.split('#', 1)[0].strip()
        if line:
            return line
    return ''


def load_system(path: str) -> Grammar | Pds:
    """A grammar or a pushdown system, told apart by the header line."""
    text = read_text(path)
    kind = file_kind(text)
    if kind == 'pds':
        return parse_pds(text)
    return parse_grammar(text)


def load_grammar(path: str) -> Grammar:
    system = load_system(path)
    if not isinstance(system, Grammar):
        raise InputError(f'{path} holds a pushdown system, a grammar is needed here')
    return system


def read_terms(grammar: Grammar, texts: list[str], terms_file: str | None) -> list[TermRef]:
    """Parse the command-line terms; a terms file replaces them when given."""
    if terms_file:
        lines = [line.strip() for line in read_text(terms_file).splitlines()]
        return [parse_term(grammar.store, line, line=number) for number, line in enumerate(lines, start=1) if line]
    return [parse_term(grammar.store, text) for text in texts]


class WorkbenchCommand(BaseCommand):
    """Runs ``run(**options)`` and turns workbench errors into exit codes.

    Outcomes that are answers rather than failures (a level only known to be
    at least the cap, an inconclusive decision) set ``exit_code`` instead.
    """

    requires_system_checks = []
    exit_code = 0

    def add_arguments(self, parser):
        parser.add_argument('--json', action='store_true', help='Print one JSON object instead of text.')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        self.exit_code = 0
        try:
            self.run(**options)
        except WorkbenchError as exc:
            logger.debug('%s failed: %s', self.__class__.__module__, exc)
            raise CommandError(' '.join(str(exc).split()), returncode=exc.exit_code) from exc

    def run(self, **options):
        raise NotImplementedError

    def run_from_argv(self, argv):
        super().run_from_argv(argv)
        if self.exit_code:
            sys.exit(self.exit_code)

    def emit(self, lines: list[str]) -> None:
        for line in lines:
            self.stdout.write(line)

    def emit_json(self, serializer_class, data) -> None:
        self.stdout.write(render_json(serializer_class(data).data))


def add_mode_argument(parser, default: str | None = None) -> None:
    parser.add_argument(
        '--vars',
        dest='mode',
        choices=['dead', 'self-loop', 'self_loop'],
        default=default,
        help='Variables have no moves (dead) or a private self-loop (self-loop).',
    )


def mode_of(options) -> VariableMode:
    return VariableMode.coerce(options.get('mode'))

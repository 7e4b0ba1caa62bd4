"""Programmatic entry point: ``main(argv)`` runs one subcommand and returns its exit code.

Exit codes: 0 success, 2 an ``AtLeast`` or inconclusive answer, 3 a budget
ran out, 4 malformed input.
"""

from __future__ import annotations

import os
import sys

COMMANDS = ('validate', 'measure', 'step', 'el', 'decide', 'constants', 'basis', 'translate', 'ordinal', 'bound')

USAGE = 'usage: fogbench {' + ','.join(COMMANDS) + '} ...\n'


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'fogbench.settings')

    import django
    from django.core.management import load_command_class
    from django.core.management.base import CommandError

    django.setup()
    if not argv or argv[0] not in COMMANDS:
        sys.stderr.write(USAGE)
        return 4
    name, rest = argv[0], argv[1:]
    command = load_command_class('workbench', name)
    parser = command.create_parser('fogbench', name)
    try:
        options = vars(parser.parse_args(rest))
        args = options.pop('args', ())
        command.execute(*args, **options)
    except CommandError as exc:
        sys.stderr.write(f'error: {exc}\n')
        # Argument-parsing failures come back with the default return code 1.
        return exc.returncode if exc.returncode > 1 else 4
    return command.exit_code

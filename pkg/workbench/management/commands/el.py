from pathlib import Path

from workbench.exceptions import CertificateUnavailable, InputError
from workbench.games import AtLeast, Finite, grammar_solver, spoiler_certificate
from workbench.grammars import Grammar
from workbench.management.base import WorkbenchCommand, add_mode_argument, load_system, mode_of, read_terms, read_text
from workbench.pushdown import parse_configuration, weak_eq_level_bounded
from workbench.serializers import CertificateSerializer, EqLevelSerializer, render_json


def certificate_data(node, describe) -> dict:
    return {
        'left': describe(node.left),
        'right': describe(node.right),
        'level': node.level,
        'side': 'left' if node.side == 0 else 'right',
        'action': str(node.action),
        'target': describe(node.target),
        'replies': [certificate_data(child, describe) for child in node.replies],
    }


class Command(WorkbenchCommand):
    help = "Bounded equivalence level of two grammar terms (or two configurations of a pushdown file)."

    def add_command_arguments(self, parser):
        parser.add_argument('path')
        parser.add_argument('terms', nargs='*', help='The two terms or configurations to compare.')
        parser.add_argument('--cap', type=int, required=True)
        parser.add_argument('--terms-file')
        parser.add_argument('--certificate', help="Write Spoiler's winning strategy (JSON) to this file.")
        parser.add_argument('--budget', type=int, help='Game positions one query may explore.')
        add_mode_argument(parser)

    def run(self, path, terms, cap, terms_file=None, certificate=None, budget=None, **options):
        if cap < 0:
            raise InputError('--cap must be a natural number')
        system = load_system(path)
        certificate_tree = None
        if isinstance(system, Grammar):
            left, right = self._pair(read_terms(system, terms, terms_file))
            solver = grammar_solver(system, mode_of(options), budget=budget)
            result = solver.level(left, right, cap)
            describe = system.store.format
            weak = False
            if certificate:
                certificate_tree = certificate_data(spoiler_certificate(solver, left, right, cap), describe)
        else:
            if terms_file:
                terms = [line for line in read_text(terms_file).splitlines() if line.strip()]
            left, right = self._pair([parse_configuration(system, text) for text in terms])
            if certificate:
                raise CertificateUnavailable('certificates are produced for grammar terms only')
            result = weak_eq_level_bounded(system, left, right, cap, budget=budget)
            describe = str
            weak = True

        if certificate_tree is not None:
            Path(certificate).write_text(render_json(CertificateSerializer(certificate_tree).data) + '\n', encoding='utf-8')
        if isinstance(result, AtLeast):
            self.exit_code = 2

        if options['json']:
            self.emit_json(EqLevelSerializer, {
                'left': describe(left),
                'right': describe(right),
                'cap': cap,
                'result': 'Finite' if isinstance(result, Finite) else 'AtLeast',
                'level': result.level if isinstance(result, Finite) else result.cap,
                'weak': weak,
                'certificate': certificate_tree,
            })
            return
        self.stdout.write(str(result))

    def _pair(self, items):
        if len(items) != 2:
            raise InputError(f'expected two terms, got {len(items)}')
        return items

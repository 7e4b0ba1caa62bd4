import random

from workbench.corpus import random_grammar, random_pds
from workbench.exceptions import InputError
from workbench.grammars import Grammar, format_grammar, grammar_size
from workbench.management.base import WorkbenchCommand, load_system
from workbench.pushdown import classify, format_pds
from workbench.serializers import ValidateSerializer


class Command(WorkbenchCommand):
    help = "Check a grammar or pushdown file, or print a seeded random instance with --generate."

    def add_command_arguments(self, parser):
        parser.add_argument('path', nargs='?')
        parser.add_argument('--generate', choices=['grammar', 'pds'])
        parser.add_argument('--seed', type=int, default=0)

    def run(self, path=None, generate=None, seed=0, **options):
        if generate:
            rng = random.Random(seed)
            if generate == 'grammar':
                text = format_grammar(random_grammar(rng))
            else:
                text = format_pds(random_pds(rng, silent_heads=rng.randint(0, 2)))
            self.stdout.write(text, ending='')
            return
        if not path:
            raise InputError('validate needs a file, or --generate grammar|pds')

        system = load_system(path)
        if isinstance(system, Grammar):
            kind = 'grammar'
            summary = {
                'nonterminals': str(len(system.alphabet)),
                'actions': str(len(system.actions)),
                'rules': str(len(system.rules)),
                'max_arity': str(system.alphabet.max_arity),
                'size': str(grammar_size(system)),
            }
        else:
            kind = 'pds'
            summary = {
                'states': str(len(system.states)),
                'actions': str(len(system.actions)),
                'stack_symbols': str(len(system.stack_symbols)),
                'rules': str(len(system.rules)),
                'class': str(classify(system)),
            }
        if options['json']:
            self.emit_json(ValidateSerializer, {'kind': kind, 'ok': True, 'summary': summary})
            return
        self.stdout.write(self.style.SUCCESS(f'ok {kind}'))
        self.emit([f'{key}={value}' for key, value in summary.items()])

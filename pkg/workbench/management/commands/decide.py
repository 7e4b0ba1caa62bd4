from workbench.candidates import eq_level_effective
from workbench.exceptions import InputError, UnsupportedSilentRules
from workbench.games import OMEGA, Bisimilar, NotBisimilar, finite_state_decide
from workbench.grammars import Grammar, GrammarLts
from workbench.management.base import WorkbenchCommand, add_mode_argument, load_system, mode_of, read_terms, read_text
from workbench.pushdown import ClosureLts, PdsLts, classify, parse_configuration
from workbench.serializers import DecideSerializer


class Command(WorkbenchCommand):
    help = (
        "Decide bisimilarity exactly when the reachable state space is finite, "
        "or run the effective level query when --eb and --c are given."
    )

    def add_command_arguments(self, parser):
        parser.add_argument('path')
        parser.add_argument('terms', nargs='*')
        parser.add_argument('--terms-file')
        parser.add_argument('--eb', type=int, help='Candidate bound E_B for the effective query.')
        parser.add_argument('--c', type=int, help='Grammatical constant c for the effective query.')
        parser.add_argument('--budget', type=int)
        add_mode_argument(parser)

    def run(self, path, terms, terms_file=None, eb=None, c=None, budget=None, **options):
        if (eb is None) != (c is None):
            raise InputError('--eb and --c go together')
        system = load_system(path)
        if isinstance(system, Grammar):
            refs = read_terms(system, terms, terms_file)
            self._check_pair(refs)
            left, right = refs
            describe = system.store.format
            if eb is not None:
                level = eq_level_effective(system, eb, c, left, right, mode=mode_of(options), budget=budget)
                method = 'effective'
                result = 'Equivalent' if level == OMEGA else 'NotEquivalent'
            else:
                method = 'finite-state'
                decision = finite_state_decide(GrammarLts(system, mode_of(options)), left, right, budget=budget)
                result, level = self._outcome(decision)
        else:
            if eb is not None:
                raise InputError('the effective query runs on grammars')
            texts = [line for line in read_text(terms_file).splitlines() if line.strip()] if terms_file else terms
            configurations = [parse_configuration(system, text) for text in texts]
            self._check_pair(configurations)
            kind = classify(system)
            if kind.real_time:
                lts = PdsLts(system)
                left, right = configurations
            elif not kind.restricted:
                raise UnsupportedSilentRules('silent rules must be the only rule of their head')
            else:
                lts = ClosureLts(system)
                left, right = (lts.closure(configuration)[0] for configuration in configurations)
            describe = str
            method = 'finite-state'
            result, level = self._outcome(finite_state_decide(lts, left, right, budget=budget))

        if result == 'Inconclusive':
            self.exit_code = 2
        if options['json']:
            self.emit_json(DecideSerializer, {
                'left': describe(left),
                'right': describe(right),
                'method': method,
                'result': result,
                'level': level,
            })
            return
        if result in ('NotBisimilar', 'NotEquivalent'):
            self.stdout.write(f'{result}({level})')
        else:
            self.stdout.write(result)

    def _outcome(self, decision):
        if isinstance(decision, Bisimilar):
            return 'Bisimilar', OMEGA
        if isinstance(decision, NotBisimilar):
            return 'NotBisimilar', decision.level
        return 'Inconclusive', None

    def _check_pair(self, items):
        if len(items) != 2:
            raise InputError(f'expected two terms, got {len(items)}')

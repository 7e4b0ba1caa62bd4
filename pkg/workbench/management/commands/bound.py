from workbench.constants import complexity_class_report, compute_constants
from workbench.grammars import Grammar
from workbench.management.base import WorkbenchCommand, load_system
from workbench.ordinals import bound_report
from workbench.pushdown import classify, pds_to_grammar, remove_nonpopping_eps
from workbench.serializers import BoundSerializer


class Command(WorkbenchCommand):
    help = "Print the symbolic bounds on equivalence levels with the grammar's constants substituted."

    def add_command_arguments(self, parser):
        parser.add_argument('path', help='A grammar, or a pushdown system translated first.')
        parser.add_argument('--n', type=int)
        parser.add_argument('--s', type=int)
        parser.add_argument('--g', type=int)
        parser.add_argument('--c', type=int)

    def run(self, path, n=None, s=None, g=None, c=None, **options):
        system = load_system(path)
        states = None
        if isinstance(system, Grammar):
            grammar = system
        else:
            states = len(system.states)
            kind = classify(system)
            if not kind.real_time and not kind.popping_silent:
                system = remove_nonpopping_eps(system)
            grammar = pds_to_grammar(system).grammar
        constants = compute_constants(grammar)
        n = constants.n if n is None else n
        report = bound_report(
            n=n,
            s=constants.s if s is None else s,
            g=constants.g if g is None else g,
            c=constants.c if c is None else c,
            size=constants.size,
            classes=complexity_class_report(n=n, states=states),
        )

        if options['json']:
            self.emit_json(BoundSerializer, {'n': n, 'lines': report.as_dict()})
            return
        self.emit([f'{key}={text}' for key, text in report.lines])

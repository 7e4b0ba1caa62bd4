import re

from workbench.grammars import SelfLoop, VariableMode, step_word
from workbench.management.base import WorkbenchCommand, add_mode_argument, load_grammar
from workbench.serializers import StepSerializer
from workbench.syntax import parse_term

SELF_LOOP_RE = re.compile(r'^a_x(\d+)$')


class Command(WorkbenchCommand):
    help = "List every term reachable from a term by exactly the given word of actions."

    def add_command_arguments(self, parser):
        parser.add_argument('path')
        parser.add_argument('term')
        parser.add_argument('word', nargs='*', help='Actions, separated by spaces.')
        add_mode_argument(parser, default='dead')

    def run(self, path, term, word, mode='dead', **options):
        grammar = load_grammar(path)
        mode = VariableMode.coerce(mode)
        ref = parse_term(grammar.store, term)
        actions = []
        for item in word:
            match = SELF_LOOP_RE.match(item)
            if match and item not in grammar.actions:
                actions.append(SelfLoop(int(match.group(1))))
            else:
                actions.append(item)
        results = [grammar.store.format(target) for target in step_word(grammar, ref, actions, mode)]

        if options['json']:
            self.emit_json(StepSerializer, {
                'term': grammar.store.format(ref),
                'word': [str(action) for action in actions],
                'mode': mode.value,
                'results': results,
            })
            return
        self.emit(results)

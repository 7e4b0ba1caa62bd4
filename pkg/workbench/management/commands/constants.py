from workbench.constants import CONSTANT_KEYS, compute_constants
from workbench.management.base import WorkbenchCommand, load_grammar
from workbench.serializers import ConstantsSerializer


class Command(WorkbenchCommand):
    help = "Print the grammatical constants of a grammar, one key=value line each, n last."

    def add_command_arguments(self, parser):
        parser.add_argument('path')
        parser.add_argument('--sink-words', action='store_true', help='Also list the shortest sink words.')

    def run(self, path, sink_words=False, **options):
        constants = compute_constants(load_grammar(path))
        values = constants.values()
        digits = constants.digits()
        words = {f'{name},{i}': ''.join(word) if all(len(a) == 1 for a in word) else ' '.join(word)
                 for (name, i), word in constants.sink_words.items()}

        if options['json']:
            self.emit_json(ConstantsSerializer, {
                'nonterminals': constants.nonterminals,
                'rules': constants.rules,
                'size': constants.size,
                'constants': values,
                'digits': digits,
                'sink_words': words,
            })
            return

        lines = []
        if sink_words:
            lines += [f'w[{key}]={word}' for key, word in words.items()]
        lines.append('digits=' + ','.join(f'{key}:{digits[key]}' for key in CONSTANT_KEYS))
        lines += [f'{key}={values[key]}' for key in CONSTANT_KEYS]
        self.emit(lines)

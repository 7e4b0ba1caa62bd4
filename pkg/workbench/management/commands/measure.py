from workbench.exceptions import InputError
from workbench.management.base import WorkbenchCommand, load_grammar, read_terms
from workbench.serializers import MeasureSerializer, PairMeasureSerializer


def _variables(indices) -> str:
    return ','.join(f'x{k}' for k in sorted(indices))


class Command(WorkbenchCommand):
    help = "Report size, ntsize, height and variables of one term, or of a pair of terms."

    def add_command_arguments(self, parser):
        parser.add_argument('path')
        parser.add_argument('terms', nargs='*')
        parser.add_argument('--terms-file')
        parser.add_argument('--graph', action='store_true', help='Also print the canonical let-bindings.')

    def measure(self, store, ref) -> dict:
        return {
            'term': store.format(ref),
            'size': store.size(ref),
            'ntsize': store.ntsize(ref),
            'height': store.height(ref),
            'finite': store.is_finite(ref),
            'vars': sorted(store.vars(ref)),
            'graph': store.serialize(ref),
        }

    def run(self, path, terms, terms_file=None, graph=False, **options):
        grammar = load_grammar(path)
        refs = read_terms(grammar, terms, terms_file)
        if len(refs) not in (1, 2):
            raise InputError('measure takes one term or a pair of terms')
        store = grammar.store
        blocks = [self.measure(store, ref) for ref in refs]

        if options['json']:
            if len(refs) == 1:
                self.emit_json(MeasureSerializer, blocks[0])
            else:
                self.emit_json(PairMeasureSerializer, {
                    'left': blocks[0],
                    'right': blocks[1],
                    'size_pair': store.size_pair(*refs),
                    'vars_pair': sorted(store.vars_pair(*refs)),
                    'equal': refs[0] == refs[1],
                })
            return

        lines = []
        prefixes = ('left.', 'right.') if len(refs) == 2 else ('',)
        for prefix, block in zip(prefixes, blocks):
            height = 'infinite' if block['height'] is None else block['height']
            lines += [
                f'{prefix}term={block["term"]}',
                f'{prefix}size={block["size"]}',
                f'{prefix}ntsize={block["ntsize"]}',
                f'{prefix}height={height}',
                f'{prefix}vars={_variables(block["vars"])}',
            ]
            if graph:
                lines += block['graph'].splitlines()
        if len(refs) == 2:
            lines += [
                f'size_pair={store.size_pair(*refs)}',
                f'vars_pair={_variables(store.vars_pair(*refs))}',
                f'equal={"yes" if refs[0] == refs[1] else "no"}',
            ]
        self.emit(lines)

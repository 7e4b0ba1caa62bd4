from workbench.exceptions import InputError
from workbench.grammars import Grammar, format_grammar
from workbench.management.base import WorkbenchCommand, load_system
from workbench.pushdown import classify, format_pds, grammar_to_pds, pds_to_grammar, remove_nonpopping_eps
from workbench.serializers import TranslateSerializer


class Command(WorkbenchCommand):
    help = "Translate a pushdown system into a grammar (pds2gram) or a grammar into a pushdown system (gram2pds)."

    def add_command_arguments(self, parser):
        parser.add_argument('direction', choices=['pds2gram', 'gram2pds'])
        parser.add_argument('path')

    def run(self, direction, path, **options):
        system = load_system(path)
        saturated = False
        if direction == 'pds2gram':
            if isinstance(system, Grammar):
                raise InputError(f'{path} holds a grammar; pds2gram reads a pushdown file')
            kind = classify(system)
            if not kind.real_time and kind.restricted and not kind.popping_silent:
                system = remove_nonpopping_eps(system)
                saturated = True
            encoding = pds_to_grammar(system)
            output = format_grammar(encoding.grammar)
        else:
            if not isinstance(system, Grammar):
                raise InputError(f'{path} holds a pushdown system; gram2pds reads a grammar file')
            encoding = grammar_to_pds(system)
            output = format_pds(encoding.pds)
        table = encoding.table()

        if options['json']:
            self.emit_json(TranslateSerializer, {
                'direction': direction,
                'output': output,
                'table': table,
                'saturated': saturated,
            })
            return
        self.stdout.write(output, ending='')
        if saturated:
            self.stdout.write('# non-popping silent rules removed before translation')
        self.emit([f'# {line}' for line in table])

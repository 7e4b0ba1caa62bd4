from workbench.exceptions import InputError
from workbench.ordinals import Ordinal, cichon, control, hardy, max_controlled_descent
from workbench.serializers import OrdinalSerializer
from workbench.management.base import WorkbenchCommand


class Command(WorkbenchCommand):
    help = "Ordinal toolkit: Hardy and Cichon hierarchies, norms, fundamental sequences, controlled descents."

    def add_command_arguments(self, parser):
        parser.add_argument('verb', choices=['hardy', 'cichon', 'norm', 'fund', 'descent'])
        parser.add_argument('--h', default='succ', help='Control function: succ, double or exp2.')
        parser.add_argument('--alpha', default='', help='Ordinal in Cantor normal form, e.g. "w^2*3+w+4".')
        parser.add_argument('--x', type=int)
        parser.add_argument('--n', type=int, help='Descents stay below w^(n+1).')
        parser.add_argument('--budget', type=int, help='Applications of h allowed.')

    def run(self, verb, h='succ', alpha='', x=None, n=None, budget=None, **options):
        fn = control(h)
        digits = None
        if verb in ('hardy', 'cichon'):
            ordinal = self._ordinal(alpha)
            self._need(x, '--x')
            evaluate = hardy if verb == 'hardy' else cichon
            number = evaluate(fn, ordinal, x, budget=budget)
            value, digits = str(number), len(str(number))
        elif verb == 'norm':
            value = str(self._ordinal(alpha).norm())
        elif verb == 'fund':
            self._need(x, '--x')
            value = str(self._ordinal(alpha).fundamental(x))
        else:
            self._need(n, '--n')
            self._need(x, '--x')
            if n < 0 or x < 0:
                raise InputError('--n and --x must be natural numbers')
            number = max_controlled_descent(n, x, fn, budget=budget)
            value, digits = str(number), len(str(number))

        if options['json']:
            self.emit_json(OrdinalSerializer, {
                'verb': verb, 'alpha': alpha, 'x': x, 'h': h, 'value': value, 'digits': digits,
            })
            return
        self.stdout.write(f'value={value}')
        if digits is not None:
            self.stdout.write(f'digits={digits}')

    def _ordinal(self, text):
        if not text:
            raise InputError('--alpha is required')
        return Ordinal.parse(text)

    def _need(self, value, flag):
        if value is None:
            raise InputError(f'{flag} is required')

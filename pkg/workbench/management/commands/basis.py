from django.db import transaction

from workbench.candidates import CandidateParams, EffectiveOracle, ExactOracle, TraceEntry, candidate_bound
from workbench.exceptions import BudgetExceeded, OracleInconclusive
from workbench.management.base import WorkbenchCommand, add_mode_argument, load_grammar, mode_of, read_text
from workbench.models import BasisIteration, BasisRun
from workbench.serializers import BasisSerializer


def trace_line(entry: TraceEntry, describe) -> str:
    left, right = entry.pair
    return (
        f'iter={entry.iteration} rank={entry.rank} pair={describe(left)}|{describe(right)} '
        f'level={entry.level} N={entry.control}'
    )


class Command(WorkbenchCommand):
    help = "Run the candidate-basis loop on a grammar and print the bound E_B with the final basis."

    def add_command_arguments(self, parser):
        parser.add_argument('path')
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--s', type=int, required=True)
        parser.add_argument('--g', type=int, default=0)
        parser.add_argument('--c', type=int, default=1)
        parser.add_argument('--oracle', choices=['exact', 'effective'], default='exact')
        parser.add_argument('--budget', type=int, help='Enumeration budget for the pair sets.')
        parser.add_argument('--trace', help="Write one line per iteration to this file ('-' for stdout).")
        parser.add_argument('--subtract-above-j', action='store_true',
                            help='Recompute lower pending sets without the pairs pending above j.')
        parser.add_argument('--save', action='store_true', help='Persist the run and its trace.')
        add_mode_argument(parser)

    def run(self, path, n, s, g=0, c=1, oracle='exact', budget=None, trace=None, subtract_above_j=False,
            save=False, **options):
        text = read_text(path)
        grammar = load_grammar(path)
        params = CandidateParams(n=n, s=s, g=g, c=c)
        mode = mode_of(options)
        if oracle == 'exact':
            level_oracle = ExactOracle(grammar, mode=mode)
        else:
            level_oracle = EffectiveOracle(grammar, c, mode=mode)
        describe = grammar.store.format

        try:
            result = candidate_bound(grammar, params, level_oracle, subtract_above_j=subtract_above_j, budget=budget)
        except (BudgetExceeded, OracleInconclusive) as exc:
            if save:
                status = BasisRun.Status.INCONCLUSIVE if isinstance(exc, OracleInconclusive) else BasisRun.Status.BUDGET_EXCEEDED
                self._save(text, params, oracle, subtract_above_j, status, message=str(exc))
            raise

        state = result.state
        basis = [
            {'left': describe(left), 'right': describe(right), 'level': level}
            for (left, right), level in result.basis
        ]
        lines = [trace_line(entry, describe) for entry in result.trace]
        run_id = None
        if save:
            run = self._save(text, params, oracle, subtract_above_j, BasisRun.Status.COMPLETED,
                             result=result, basis=basis, describe=describe)
            run_id = run.pk
        if trace == '-':
            self.emit(lines)
        elif trace:
            with open(trace, 'w', encoding='utf-8') as handle:
                handle.writelines(line + '\n' for line in lines)

        if options['json']:
            self.emit_json(BasisSerializer, {
                'n': n,
                's': state.s,
                'e': state.e,
                'oracle': oracle,
                'bound': result.bound,
                'digits': {'bound': len(str(result.bound))},
                'basis': basis,
                'iterations': len(result.trace),
                'trace': [
                    {
                        'iteration': entry.iteration,
                        'rank': str(entry.rank),
                        'left': describe(entry.pair[0]),
                        'right': describe(entry.pair[1]),
                        'level': entry.level,
                        'control': entry.control,
                    }
                    for entry in result.trace
                ],
                'run': run_id,
            })
            return

        out = [f'E_B={result.bound}', f'digits={len(str(result.bound))}', f'basis={len(basis)}']
        out += [f'pair={item["left"]}|{item["right"]} level={item["level"]}' for item in basis]
        out.append(f'iterations={len(result.trace)}')
        if run_id is not None:
            out.append(f'run={run_id}')
        self.emit(out)

    @transaction.atomic
    def _save(self, text, params, oracle, subtract_above_j, status, *, result=None, basis=(), describe=None,
              message=''):
        run = BasisRun.objects.create(
            grammar_text=text,
            grammar_digest=BasisRun.digest(text),
            n=str(params.n),
            s=str(params.s),
            g=str(params.g),
            c=str(params.c),
            oracle=oracle,
            subtract_above_j=subtract_above_j,
            status=status,
            bound=str(result.bound) if result else '',
            basis_size=len(basis),
            iterations=len(result.trace) if result else 0,
            basis=list(basis),
            message=message,
        )
        if result:
            BasisIteration.objects.bulk_create([
                BasisIteration(
                    run=run,
                    index=entry.iteration,
                    rank=str(entry.rank),
                    pair_left=describe(entry.pair[0]),
                    pair_right=describe(entry.pair[1]),
                    level=entry.level,
                    control=str(entry.control),
                )
                for entry in result.trace
            ])
        return run

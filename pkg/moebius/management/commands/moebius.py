import logging

from django.core.management.base import BaseCommand, CommandError

from moebius.exceptions import MoebiusError
from moebius.runner import EXIT_USAGE, run
from moebius.serializers import SUBCOMMANDS, RunConfigSerializer

logger = logging.getLogger(__name__)

SUBCOMMAND_HELP = {
    'table': "CSV of g, f, M, theta, epsilon and h at every stride up to the limit",
    'verify': "Run every identity and bound scan up to the limit",
    'converge': "Sample |h(x)|/log x and |M(x)|/x and locate G and xi for --delta",
    'fast': "Sub-linear M(x) and g(x) at multiples of the stride",
    'bench': "Time the sieve over block sizes and the M recursion over crossovers",
}


class Command(BaseCommand):
    help = "Möbius summatory functions: tables, verification, convergence scans and benchmarks"

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcommand', required=True)
        for name in SUBCOMMANDS:
            sub = subparsers.add_parser(name, help=SUBCOMMAND_HELP[name])
            sub.add_argument('--limit', type=int, required=True, help="Largest x to evaluate")
            sub.add_argument('--stride', type=int, help="Spacing of sampled x")
            sub.add_argument('--delta', type=float, help="Target bound for the convergence ratios")
            sub.add_argument('--out', help="Write the CSV here instead of standard output")
            sub.add_argument('--cutoff', type=int, help="Exactness cutoff for rational arithmetic")
            sub.add_argument('--blocksize', type=int, help="Sieve segment size")
            sub.add_argument('--crossover', type=int, help="Sieved prefix size K for the recursions")

    def handle(self, *args, **options):
        serializer = RunConfigSerializer(data={
            key: options.get(key)
            for key in ('subcommand', 'limit', 'stride', 'delta', 'out', 'cutoff', 'blocksize', 'crossover')
        })
        if not serializer.is_valid():
            raise CommandError(f"Invalid options: {dict(serializer.errors)}", returncode=EXIT_USAGE)
        config = serializer.save()

        try:
            status = run(config, stdout=self.stdout)
        except MoebiusError as e:
            logger.error(f"{config.subcommand} rejected its arguments: {str(e)}")
            raise CommandError(str(e), returncode=EXIT_USAGE)
        if status:
            raise CommandError(f"{config.subcommand} exited with status {status}", returncode=status)

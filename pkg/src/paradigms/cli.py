"""Command-line entry point.

    paradigms hamming [--count N] [--capacity C] [--scheduler S]
    paradigms circle-parabola [--positive-x] [--eps E]
    paradigms run-network FILE [--count N] [--scheduler S]

Exit codes: 0 success, 1 usage or input error, 2 inconsistent constraint
system, 3 budget exhausted (including a deadlocked network).
"""
import argparse
import sys
from dataclasses import dataclass

from . import constraint, dataflow

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONSISTENT = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    count: int = 20
    capacity: int = 10
    eps: float = 1e-12
    positive_x: bool = False
    scheduler: str = "roundrobin"
    path: str = None

    def __post_init__(self):
        if self.count < 1:
            raise UsageError(f"--count must be at least 1, got {self.count}")
        if self.capacity < 1:
            raise UsageError(f"--capacity must be at least 1, got {self.capacity}")
        if not self.eps > 0:
            raise UsageError(f"--eps must be positive, got {self.eps}")


def _run_until(net, cfg, enough):
    """Run ``net`` with the configured scheduler until ``enough()``.

    The budget is 100 sweeps per requested item; for the blocked-set
    scheduler a sweep counts as one firing per node.
    """
    sweeps = 100 * cfg.count
    if cfg.scheduler == "blockedset":
        net.run_blockedset(sweeps * max(len(net.nodes), 1), until=enough)
    else:
        net.run_roundrobin(sweeps, until=enough)
    return enough()


def cmd_hamming(cfg, out, err):
    net = dataflow.build_hamming(cfg.capacity)
    probe, = net.probes
    if not _run_until(net, cfg, lambda: len(probe.observed) >= cfg.count):
        print(f"hamming: network stalled after {len(probe.observed)} of {cfg.count} items "
              f"(pipe capacity {cfg.capacity} too small?)", file=err)
        return EXIT_BUDGET
    for v in probe.observed[:cfg.count]:
        print(v, file=out)
    return EXIT_OK


def cmd_circle_parabola(cfg, out, err):
    store, x, y = constraint.circle_parabola(positive_x=cfg.positive_x)
    if not cfg.positive_x:
        outcome = constraint.propagate_roundrobin(store)
        if outcome.status is constraint.Status.INCONSISTENT:
            print("circle-parabola: constraint system is inconsistent", file=err)
            return EXIT_INCONSISTENT
        print(constraint.format_solution([x, y]), file=out)
        return EXIT_OK
    boxes = constraint.solve(store, [x, y], cfg.eps)
    if not boxes:
        print("circle-parabola: constraint system is inconsistent", file=err)
        return EXIT_INCONSISTENT
    chunks = [f"x: {bx}\ny: {by}" for bx, by in boxes]
    print("\n\n".join(chunks), file=out)
    return EXIT_OK


def cmd_run_network(cfg, out, err):
    """Run a network file until each probe has seen ``count`` items.

    Networks that stop on their own are not an error: whatever the probes
    saw is printed.  With several probes each group is headed by the probe
    name.
    """
    try:
        net = dataflow.load_network(cfg.path)
    except OSError as e:
        print(f"run-network: cannot read {cfg.path}: {e.strerror}", file=err)
        return EXIT_USAGE
    except dataflow.NetworkError as e:
        print(f"run-network: {e}", file=err)
        return EXIT_USAGE
    probes = net.probes
    if net.nodes:
        _run_until(net, cfg, lambda: all(len(p.observed) >= cfg.count for p in probes))
    for p in probes:
        if len(probes) > 1:
            print(f"{p.name}:", file=out)
        for v in p.observed[:cfg.count]:
            print(v, file=out)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="paradigms",
                     description="Dataflow and interval-constraint demos.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def scheduler(p):
        p.add_argument("--scheduler", choices=["roundrobin", "blockedset"],
                       default="roundrobin", help="node scheduling strategy")

    p = sub.add_parser("hamming", help="print Hamming numbers from a dataflow network")
    p.add_argument("--count", type=int, default=20, help="number of items to print")
    p.add_argument("--capacity", type=int, default=10, help="capacity of every pipe")
    scheduler(p)

    p = sub.add_parser("circle-parabola",
                       help="intersect x^2+y^2=1 with y=x^2 by interval constraints")
    p.add_argument("--positive-x", action="store_true",
                   help="add 0.5 <= x and split until boxes are narrow")
    p.add_argument("--eps", type=float, default=1e-12, help="target box width")

    p = sub.add_parser("run-network", help="run a dataflow network from a JSON file")
    p.add_argument("path", help="network description")
    p.add_argument("--count", type=int, default=20, help="items to collect per probe")
    scheduler(p)
    return parser


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    fields = {k: v for k, v in vars(args).items() if v is not None}
    try:
        cfg = RunConfig(**fields)
    except UsageError as e:
        print(f"paradigms {args.command}: {e}", file=err)
        return EXIT_USAGE
    handler = {
        "hamming": cmd_hamming,
        "circle-parabola": cmd_circle_parabola,
        "run-network": cmd_run_network,
    }[cfg.command]
    return handler(cfg, out, err)


if __name__ == "__main__":
    sys.exit(main())

"""verify - run the acceptance suites and print a pass/fail table."""

import sys

from ..command_base import CommandBase
from ..errors import VerificationFailure
from ..verification import REGISTRY, all_passed, format_table, run_suite, suite_names


class VerifyCommand(CommandBase):
    name = "verify"
    help = "acceptance suites (exit 1 if any check fails)"

    def add_arguments(self, parser):
        parser.add_argument("--suite", default="all", help=f"one of {', '.join(suite_names())} or a criterion name")
        parser.add_argument("--list", action="store_true", help="list the registered criteria and exit")

    def on_launch(self):
        self.outcomes = []

    def on_run(self):
        if self.args.list:
            for c in sorted(REGISTRY.values(), key=lambda c: c.number):
                print(f"{c.number:>3}  {c.name:<20} {','.join(c.suites):<22} {c.title}", file=self.stream)
            return
        self.outcomes = run_suite(self.args.suite, self.settings)
        for o in self.outcomes:
            parameters = {"criterion": o.criterion, "check": o.name, "tolerance": o.tolerance}
            if o.detail:
                parameters["detail"] = o.detail
            result = "info" if o.informational else "pass" if o.passed else "fail"
            yield self.record(o.residual, parameters, classification=result)

    def on_exit(self):
        if not self.outcomes:
            return 0
        print(format_table(self.outcomes), file=sys.stderr)
        if not all_passed(self.outcomes):
            failed = sum(1 for o in self.outcomes if not (o.passed or o.informational))
            raise VerificationFailure(f"{failed} checks failed")
        return 0

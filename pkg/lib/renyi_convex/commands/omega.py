"""omega - Omega_K, A_K and the p-limits they come from."""

from ..affine_surface import a_k, a_k_limit_diagnostic, omega, omega_limit_diagnostic, omega_polar_residual
from ..bodies import polar
from ..command_base import CommandBase, add_body_argument, parse_number_list


class OmegaCommand(CommandBase):
    name = "omega"
    help = "Omega_K and A_K through the Kullback-Leibler divergences"

    def add_arguments(self, parser):
        add_body_argument(parser)
        parser.add_argument("--p", type=parse_number_list, default=[], help="p values for the limit residuals")

    def on_run(self):
        family = self.family()
        yield self.record(omega(self.body, family), {"quantity": "omega"})
        yield self.record(a_k(self.body, family), {"quantity": "a_k"})
        check = omega_polar_residual(self.body, family, self.family([polar(self.body)]))
        yield self.record(check.residual, {"quantity": "omega_polar_residual", "consistent": check.consistent})
        if self.args.p:
            ascending = sorted(self.args.p)
            for p, residual in zip(ascending, omega_limit_diagnostic(self.body, ascending, family)):
                yield self.record(residual, {"quantity": "omega_limit_residual", "p": p})
            descending = sorted(self.args.p, reverse=True)
            for p, residual in zip(descending, a_k_limit_diagnostic(self.body, descending, family)):
                yield self.record(residual, {"quantity": "a_k_limit_residual", "p": p})

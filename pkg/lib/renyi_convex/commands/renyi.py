"""renyi - D_alpha(P_K || Q_K) and D_alpha(Q_K || P_K)."""

from ..command_base import CommandBase, add_body_argument, add_direction_argument, parse_order_list
from ..divergence import Order, renyi


class RenyiCommand(CommandBase):
    name = "renyi"
    help = "Renyi divergences between the cone-measure densities of K"

    def add_arguments(self, parser):
        add_body_argument(parser)
        parser.add_argument("--alpha", type=parse_order_list, default=["0.5"], help="orders: reals, kl, inf, -inf")
        add_direction_argument(parser)
        parser.add_argument("--route", choices=["sphere", "boundary"], default="sphere", help="parametrization")

    def on_run(self):
        for text in self.args.alpha:
            order = Order.of(text)
            result = renyi(
                self.body,
                order,
                self.args.dir,
                route=self.args.route,
                family=self.family(),
                tol=self.settings.tol,
            )
            parameters = {"alpha": str(order), "dir": self.args.dir, "route": self.args.route, "reason": result.reason}
            yield self.record(result.value, parameters, result.err_estimate, result.classification)

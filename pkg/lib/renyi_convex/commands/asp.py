"""asp - L_p affine surface areas of one body."""

from ..affine_surface import PParameter, as_p, as_p_via_renyi
from ..command_base import CommandBase, add_body_argument, parse_order_list


class AspCommand(CommandBase):
    name = "asp"
    help = "L_p affine surface areas as_p(K)"

    def add_arguments(self, parser):
        add_body_argument(parser)
        parser.add_argument("--p", type=parse_order_list, default=["1"], help="p values: reals, inf, -inf, -n+, -n-")
        parser.add_argument(
            "--route",
            choices=["sphere", "boundary"],
            default="sphere",
            help="sphere integral, or exp of D_{p/(n+p)}(P||Q) on the boundary (n = 2)",
        )

    def on_run(self):
        for text in self.args.p:
            p = PParameter.of(text, self.body.dim)
            if self.args.route == "boundary":
                value = as_p_via_renyi(self.body, p.value, route="boundary")
                yield self.record(value, {"p": str(p), "route": "boundary"})
                continue
            result = as_p(self.body, p, self.family(), tol=self.settings.tol)
            yield self.record(
                result.value,
                {"p": str(p), "route": "sphere", "reason": result.reason},
                result.err_estimate,
                result.classification,
            )

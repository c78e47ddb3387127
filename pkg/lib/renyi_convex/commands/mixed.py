"""mixed - mixed as_p, dual mixed volume and mixed divergences of n bodies."""

from ..affine_surface import dual_mixed_volume, mixed_as_p, mixed_identity, mixed_omega
from ..command_base import CommandBase, add_direction_argument, parse_number_list, parse_order_list
from ..divergence import Order, mixed_renyi
from ..errors import InvalidArgument
from ..records import body_digest, load_body


class MixedCommand(CommandBase):
    name = "mixed"
    help = "mixed quantities of n bodies (repeat --body n times)"

    def add_arguments(self, parser):
        parser.add_argument("--body", action="append", required=True, help="body descriptor (one per body)")
        parser.add_argument("--p", type=parse_order_list, default=[], help="p values for mixed as_p (reals, inf)")
        parser.add_argument("--alpha", type=parse_order_list, default=[], help="orders for mixed D_alpha")
        add_direction_argument(parser)
        parser.add_argument("--identity", type=parse_number_list, default=[], help="alphas for the mixed as_p identity")
        parser.add_argument("--omega", action="store_true", help="also emit the mixed Omega")

    def on_launch(self):
        loaded = [load_body(path) for path in self.args.body]
        self.bodies = [body for body, _ in loaded]
        n = self.bodies[0].dim
        if len(self.bodies) != n:
            raise InvalidArgument(f"mixed quantities in dimension {n} need {n} bodies, got {len(self.bodies)}")
        self.digest = body_digest({"bodies": [document for _, document in loaded]})

    def on_run(self):
        family = self.family(self.bodies)
        dual = dual_mixed_volume(self.bodies, self.settings.tol, family)
        yield self.record(dual, {"quantity": "dual_mixed_volume"})
        for text in self.args.p:
            value = mixed_as_p(self.bodies, text, self.settings.tol, family)
            yield self.record(value, {"quantity": "mixed_as_p", "p": text})
        for text in self.args.alpha:
            order = Order.of(text)
            result = mixed_renyi(self.bodies, order, self.args.dir, family=family, tol=self.settings.tol)
            parameters = {"quantity": "mixed_renyi", "alpha": str(order), "dir": self.args.dir}
            yield self.record(result.value, parameters, result.err_estimate, result.classification)
        for alpha in self.args.identity:
            check = mixed_identity(self.bodies, alpha, self.args.dir, family)
            parameters = {"quantity": "mixed_identity", "alpha": alpha, "dir": self.args.dir, "lhs": check.lhs}
            yield self.record(check.rhs, parameters, check.residual)
        if self.args.omega:
            yield self.record(mixed_omega(self.bodies, family), {"quantity": "mixed_omega"})

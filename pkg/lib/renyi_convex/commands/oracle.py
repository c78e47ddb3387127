"""oracle - closed forms."""

from ..command_base import CommandBase, add_direction_argument, parse_number_list
from ..oracles import disk_illumination_body_law, disk_surface_body_law, lr_renyi_closed_form, lr_volume, mc_lr_volume


class OracleCommand(CommandBase):
    name = "oracle"
    help = "closed-form values: l_r ball divergences and volumes, disk surface-body laws"

    def add_arguments(self, parser):
        parser.add_argument(
            "--kind", required=True, choices=["lr-renyi", "lr-volume", "lr-volume-mc", "disk-surface", "disk-illumination"]
        )
        parser.add_argument("--n", type=int, default=2, help="dimension")
        parser.add_argument("--r", type=float, default=3.0, help="l_r exponent, 1 < r < inf")
        parser.add_argument("--alpha", type=parse_number_list, default=[0.5])
        add_direction_argument(parser)
        parser.add_argument("--rho", type=float, default=1.0, help="disk radius")
        parser.add_argument("--s", type=parse_number_list, default=[0.1])

    def on_run(self):
        a = self.args
        if a.kind == "lr-renyi":
            for alpha in a.alpha:
                result = lr_renyi_closed_form(a.n, a.r, alpha, a.dir)
                yield self.record(result.value, {"n": a.n, "r": a.r, "alpha": alpha, "dir": a.dir, "regime": result.regime})
        elif a.kind == "lr-volume":
            yield self.record(lr_volume(a.n, a.r), {"n": a.n, "r": a.r})
        elif a.kind == "lr-volume-mc":
            estimate, stderr = mc_lr_volume(a.n, a.r, seed=self.settings.seed)
            yield self.record(estimate, {"n": a.n, "r": a.r, "seed": self.settings.seed}, stderr)
        else:
            law = disk_surface_body_law if a.kind == "disk-surface" else disk_illumination_body_law
            for s in a.s:
                values = law(a.rho, s)
                change = values.get("area_deficit", values.get("area_excess"))
                yield self.record(change, {"rho": a.rho, "s": s, "radius": float(values["radius"])})

"""surface-body - volumes, quotients and limits of planar surface bodies."""

from ..command_base import CommandBase, add_body_argument, parse_s_grid
from ..polygon import shoelace_area
from ..records import load_body, write_plot_csv
from ..surface_bodies import default_s_grid, illumination_surface_body, limit_quotient, surface_body, weight_from_spec


class SurfaceBodyCommand(CommandBase):
    name = "surface-body"
    help = "surface bodies K_(f,s) and illumination bodies K^(f,s) of a planar body"

    def add_arguments(self, parser):
        add_body_argument(parser)
        parser.add_argument(
            "--weight", default="const", help="const[:c], fp:<p>, fqp, fpq, fpq-printed or mixed:<p>"
        )
        parser.add_argument("--with", dest="with_bodies", action="append", default=[], help="bodies of the mixed weight")
        parser.add_argument("--s-grid", type=parse_s_grid, default=None, help="start:stop:ratio (default 0.1:1e-3:0.5)")
        parser.add_argument("--variant", choices=["surface", "illumination"], default="surface")
        parser.add_argument("--plot-out", default=None, help="CSV file with s, volume, quotient")

    def on_launch(self):
        super().on_launch()
        mixed = [load_body(path)[0] for path in self.args.with_bodies]
        self.weight = weight_from_spec(self.args.weight, self.body, mixed)
        self.s_grid = self.args.s_grid or [float(s) for s in default_s_grid()]
        self.rows = []

    def _polytope_records(self):
        # no limit on polytopes: areas only
        vol = shoelace_area(self.body.vertices)
        build = surface_body if self.args.variant == "surface" else illumination_surface_body
        for s in self.s_grid:
            area = shoelace_area(build(self.body, self.weight, s))
            quotient = (vol - area) / s**2
            self.rows.append((s, area, quotient))
            yield self.record(area, {"s": s, "quotient": quotient, "weight": self.weight.describe()})

    def on_run(self):
        if not self.body.is_smooth:
            yield from self._polytope_records()
            return
        result = limit_quotient(self.body, self.weight, self.s_grid, self.args.variant)
        for s, volume, quotient in zip(result.s_grid, result.volumes, result.quotients):
            self.rows.append((float(s), float(volume), float(quotient)))
            yield self.record(volume, {"s": float(s), "quotient": float(quotient), "variant": result.variant})
        parameters = {
            "quantity": "limit",
            "variant": result.variant,
            "weight": result.weight,
            "rhs": result.rhs,
            "c_n": result.c_n,
            "exponent": result.fit.exponent,
            "monotone": result.fit.monotone,
        }
        yield self.record(result.limit, parameters, abs(result.limit - result.rhs))

    def on_exit(self):
        if self.args.plot_out:
            write_plot_csv(self.args.plot_out, ["s", "volume", "quotient"], self.rows)
        return 0

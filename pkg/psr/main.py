import typer

from psr.routes.algebra_route import algebra_router
from psr.routes.classify_route import classify_router
from psr.routes.facet_route import facet_router
from psr.routes.filtration_route import filtration_router
from psr.routes.metric_route import metric_router
from psr.routes.plot_route import plot_router

app = typer.Typer(
    name="psr",
    help="Persistent Stanley-Reisner toolkit: Betti tables, facet persistence, and critical-value classification.",
    no_args_is_help=True,
    add_completion=False,
)

for router in (
    filtration_router,
    algebra_router,
    facet_router,
    metric_router,
    classify_router,
    plot_router,
):
    app.registered_commands.extend(router.registered_commands)


def main():
    app()


if __name__ == "__main__":
    main()

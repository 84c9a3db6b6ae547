from rich.console import Console
from rich.table import Table

from app.constants.method_ids import IMPLICIT_METHODS, IRKGL16_STAGES, UNBUNDLED_METHODS
from app.constants.problem_defaults import PROBLEM_DEFAULTS
from app.core.error_handlers import cli_error_boundary
from app.schemas.splitting.scheme_schemas import CompositionScheme
from app.services.problems.problem_registry_service import PROBLEM_DESCRIPTIONS
from app.services.splitting.scheme_registry_service import SCHEME_DIR, get_scheme, scheme_registry

console = Console()


def list_command():
    """List the registered problems and integration methods."""
    with cli_error_boundary():
        problems = Table(title="Problems")
        problems.add_column("id")
        problems.add_column("description")
        problems.add_column("default h", justify="right")
        problems.add_column("default tf", justify="right")
        for problem_id, description in PROBLEM_DESCRIPTIONS.items():
            defaults = PROBLEM_DEFAULTS[problem_id]
            problems.add_row(problem_id, description, f"{defaults['h']:.6g}", f"{defaults['tf']:.6g}")

        methods = Table(title="Methods")
        methods.add_column("id")
        methods.add_column("kind")
        methods.add_column("order", justify="right")
        methods.add_column("stages", justify="right")
        for method in IMPLICIT_METHODS:
            methods.add_row(method, "implicit Gauss-Legendre", str(2 * IRKGL16_STAGES), str(IRKGL16_STAGES))
        for name, scheme in scheme_registry().items():
            kind = "composition" if isinstance(scheme, CompositionScheme) else "splitting (a, b)"
            methods.add_row(name, kind, str(scheme.order), str(scheme.stages))
        for name in UNBUNDLED_METHODS:
            if (SCHEME_DIR / f"{name}.txt").is_file():
                scheme = get_scheme(name)
                methods.add_row(name, "supplied table", str(scheme.order), str(scheme.stages))
            else:
                methods.add_row(name, "published, not bundled", "-", "-")

        console.print(problems)
        console.print(methods)

from rich.progress import (
        Progress,
        TimeElapsedColumn,
        BarColumn,
        TaskProgressColumn,
        TimeRemainingColumn,
    )

from vie_solver.utils.logger import console


def get_progress_bar(transient: bool = False):
    """Progress bar on the stderr console"""
    return Progress(
        "[progress.description]{task.description}",
        BarColumn(),
        TaskProgressColumn(),
        "[yellow]({task.completed}/{task.total})",
        TimeElapsedColumn(),
        TimeRemainingColumn(),
        console=console,
        transient=transient,
    )

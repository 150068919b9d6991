from .config import COMMANDS, ConfigError, JobConfig, from_dict, parse_config, serialize
from .run import EXIT_ERROR, EXIT_OK, EXIT_UNSTABLE, Report, run_job
from .svg import render_svg

__all__ = ["COMMANDS", "ConfigError", "JobConfig", "from_dict", "parse_config", "serialize", "EXIT_ERROR",
           "EXIT_OK", "EXIT_UNSTABLE", "Report", "run_job", "render_svg"]

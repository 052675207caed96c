"""Configuration for the application."""

import os
from typing import List

from dotenv import load_dotenv
from pydantic import BaseModel

# Load environment variables from .env file
load_dotenv()

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Config(BaseModel):
    """Configuration for the application."""

    # Logging (the only setting read from the environment)
    log_level: str = os.getenv("FRENET4_LOG_LEVEL", "WARNING")
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    log_date_format: str = "%Y-%m-%d %H:%M:%S"

    # Jet evaluation: 4 curve derivatives plus 2 arclength derivatives of curvature
    jet_order: int = 6

    # Sampling
    samples: int = 256
    min_samples: int = 8

    # Regularity and degeneracy thresholds (relative)
    eps_reg: float = 1e-9
    eps_deg: float = 1e-9

    # Classification tolerances
    tol_const: float = 1e-7
    tol_pde: float = 1e-6
    inconclusive_factor: float = 10.0

    # Closed form versus oracle
    tol_crosscheck: float = 1e-6

    # Arclength quadrature
    quad_abs_tol: float = 1e-10
    quad_limit: int = 200

    # Reports
    schema_version: str = "1.0"
    float_format: str = ".17g"

    def validate_config(self) -> List[str]:
        """Validate the configuration and return a list of problems."""
        problems = []

        if self.log_level.upper() not in _LOG_LEVELS:
            problems.append(f"FRENET4_LOG_LEVEL={self.log_level!r}")

        if self.jet_order < 6:
            problems.append(f"jet_order={self.jet_order} (needs >= 6)")

        for name in ("eps_reg", "eps_deg", "tol_const", "tol_pde", "tol_crosscheck"):
            if getattr(self, name) <= 0:
                problems.append(f"{name} must be positive")

        if self.samples < self.min_samples:
            problems.append(f"samples={self.samples} (needs >= {self.min_samples})")

        return problems


# Create a global config instance
config = Config()

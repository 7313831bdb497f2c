from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class AppConfig(BaseSettings):
    log_level: str = Field(default="INFO", alias="QVORD_LOG_LEVEL")
    output_dir: str = Field(default="qvord_out", alias="QVORD_OUTPUT_DIR")

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")


class ClusterConfig(BaseSettings):
    seed: int = Field(default=42, alias="QVORD_SEED")
    restarts: int = Field(default=50, alias="QVORD_RESTARTS")
    max_iter: int = Field(default=300, alias="QVORD_MAX_ITER")
    # >1 runs k-means restarts in a thread pool; results do not depend on it
    workers: int = Field(default=1, alias="QVORD_WORKERS")
    oracle_max_points: int = Field(default=12, alias="QVORD_ORACLE_MAX_POINTS")

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")


class TheoryConfig(BaseSettings):
    library_tol: float = Field(default=1e-9, alias="QVORD_LIBRARY_TOL")
    cli_tol: float = Field(default=1e-6, alias="QVORD_CLI_TOL")
    tail_tol: float = Field(default=1e-14, alias="QVORD_TAIL_TOL")
    support_cap: int = Field(default=1_000_000, alias="QVORD_SUPPORT_CAP")

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")


class PlotConfig(BaseSettings):
    width: int = Field(default=640, alias="QVORD_PLOT_WIDTH")
    height: int = Field(default=480, alias="QVORD_PLOT_HEIGHT")
    padding: float = Field(default=0.10, alias="QVORD_PLOT_PADDING")
    ticks: int = Field(default=6, alias="QVORD_PLOT_TICKS")

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")


class Config:
    def __init__(self):
        self.app = AppConfig()
        self.cluster = ClusterConfig()
        self.theory = TheoryConfig()
        self.plot = PlotConfig()


config = Config()

# toralaut/config/settings.py

from typing import Literal

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables from a .env file in the working directory
load_dotenv()


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="TORALAUT_", extra="ignore")

    # --- Enumeration ---
    max_support: int = Field(9, ge=1, description="Largest |supp h| enumerate_gaff accepts.")
    threads: int = Field(1, ge=1, description="Worker processes for enumerate_gaff.")

    # --- Output ---
    output_format: Literal["text", "json"] = "text"
    log_level: str = "WARNING"


settings = Settings()

# Optional: a .env file such as
# TORALAUT_MAX_SUPPORT=10
# TORALAUT_THREADS=4

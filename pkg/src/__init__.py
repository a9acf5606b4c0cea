from dotenv import load_dotenv

load_dotenv(".env", override=True)

from src.config import config as config  # noqa: E402

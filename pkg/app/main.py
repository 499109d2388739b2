from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from . import __version__
from .config import configure_logging
from .database import create_db_and_tables
from .routers import datasets, logs, methods, results

configure_logging()

app = FastAPI(title="TSAug Bench API", version=__version__)

# Local notebooks and plotting front-ends read the reports from another port
app.add_middleware(
    CORSMiddleware,
    allow_origins=["http://localhost:8002", "http://127.0.0.1:8002"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include routers
app.include_router(methods.router)
app.include_router(datasets.router)
app.include_router(results.router)
app.include_router(logs.router)


@app.on_event("startup")
def on_startup():
    create_db_and_tables()
    print("✅ Results store ready")


@app.get("/")
def read_root():
    return {"service": "tsaug-bench", "version": __version__, "docs": "/docs"}

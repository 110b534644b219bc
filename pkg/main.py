from fastapi import FastAPI

from src.routes import catalog, certificates, predictions

app = FastAPI(title="siegel-congruences")

app.include_router(predictions.router, prefix='/api')
app.include_router(catalog.router, prefix='/api')
app.include_router(certificates.router, prefix='/api')


@app.get("/")
def read_root():
    """
        Returns a simple greeting message.

        :return: A greeting message.
        :rtype: dict
    """
    return {"message": "Siegel congruences"}

from fastapi import APIRouter
from api.endpoints import walks, verify, series
from api.endpoints import criterion, asymptotics

# Create main API router
api_router = APIRouter()

# Include all endpoint routers
api_router.include_router(walks.router, prefix="/walks", tags=["Enumeration"])
api_router.include_router(verify.router, prefix="/verify", tags=["Verification"])
api_router.include_router(series.router, prefix="/series", tags=["Series"])
api_router.include_router(criterion.router, prefix="/criterion", tags=["Criterion"])
api_router.include_router(asymptotics.router, prefix="/asymptotics", tags=["Asymptotics"])

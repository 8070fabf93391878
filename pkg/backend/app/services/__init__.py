# Services package
from app.services import check_logger, demo_service, factor_service, laws_service, product_service, suite_service

__all__ = ["check_logger", "demo_service", "factor_service", "laws_service", "product_service", "suite_service"]

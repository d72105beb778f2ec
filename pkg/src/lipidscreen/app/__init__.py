from .store import Store, HumanVerdict, EscalationTicket, ConflictError, StoreError

__all__ = ["Store", "HumanVerdict", "EscalationTicket", "ConflictError", "StoreError"]

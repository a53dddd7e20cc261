# policies/registry.py
from typing import Dict
from policies.base_policy import BasePolicy
from utils.errors import InputError

class PolicyRegistry:
    _policies: Dict[str, BasePolicy] = {}

    @classmethod
    def register(cls, name: str, policy: BasePolicy):
        cls._policies[name] = policy

    @classmethod
    def get(cls, name: str) -> BasePolicy:
        if name not in cls._policies:
            raise InputError(f"unknown policy '{name}', expected one of {sorted(cls._policies)}")
        return cls._policies[name]

    @classmethod
    def all(cls) -> Dict[str, BasePolicy]:
        return cls._policies

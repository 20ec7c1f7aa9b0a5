"""
Registry module for Niemytzki Lab

This module provides named registries populated by decorators: builtin basic
families, closed-form test functions for liminf estimation, and the proxy
table used when a family has no power-law form.
"""
from typing import Any, Callable, Dict, Generic, List, Optional, TypeVar
from dataclasses import dataclass, field
import logging

from .errors import UnknownEntry

logger = logging.getLogger(__name__)

T = TypeVar("T")
F = TypeVar("F", bound=Callable[..., Any])


@dataclass
class Entry(Generic[T]):
    name: str
    factory: Callable[..., T]
    description: str = ""
    aliases: List[str] = field(default_factory=list)


class Registry(Generic[T]):
    """Named collection of factories"""

    def __init__(self, kind: str):
        self.kind = kind
        self._entries: Dict[str, Entry[T]] = {}
        self._aliases: Dict[str, str] = {}

    def register(self, name: str, *, description: str = "",
                 aliases: Optional[List[str]] = None) -> Callable[[F], F]:
        """
        Decorator to register a factory under a name

        Args:
            name: Registry key
            description: Human-readable description (defaults to the docstring)
            aliases: Alternative keys resolving to the same entry

        Returns:
            The undecorated factory
        """
        def decorator(fn: F) -> F:
            entry = Entry(
                name=name,
                factory=fn,
                description=description or (fn.__doc__ or "").strip(),
                aliases=list(aliases or []),
            )
            self._entries[name] = entry
            for alias in entry.aliases:
                self._aliases[alias] = name
            logger.debug("registered %s '%s'", self.kind, name)
            return fn
        return decorator

    def resolve(self, name: str) -> str:
        """Map an alias to its canonical name"""
        return self._aliases.get(name, name)

    def get(self, name: str) -> Entry[T]:
        key = self.resolve(name)
        if key not in self._entries:
            raise UnknownEntry(self.kind, name, list(self._entries))
        return self._entries[key]

    def build(self, name: str, **params: Any) -> T:
        """
        Build an instance from a registered factory

        Args:
            name: Registry key or alias
            params: Keyword parameters for the factory

        Returns:
            Factory result
        """
        return self.get(name).factory(**params)

    def names(self) -> List[str]:
        return sorted(self._entries)

    def __contains__(self, name: str) -> bool:
        return self.resolve(name) in self._entries


families: "Registry[Any]" = Registry("family")
positive_functions: "Registry[Any]" = Registry("positive function")
monotone_functions: "Registry[Any]" = Registry("monotone function")

# Maps a non-power-law family name to a power-law stand-in
_proxies: Dict[str, str] = {}


def register_proxy(source: str, stand_in: str) -> None:
    """
    Register a power-law stand-in for a family without a power-law form

    Args:
        source: Name of the family lacking a power-law descriptor
        stand_in: Name of a registered power-law family with the same topology
    """
    _proxies[source] = stand_in


def proxy_for(source: str) -> Optional[str]:
    return _proxies.get(source)

"""MCP server exposing the analysis commands as tools."""

import asyncio
import logging
import os
import sys
from pathlib import Path
from typing import Any, Optional

# Windows uses CRLF but MCP expects LF only
if sys.platform == "win32":
    import msvcrt
    msvcrt.setmode(sys.stdout.fileno(), os.O_BINARY)
    msvcrt.setmode(sys.stdin.fileno(), os.O_BINARY)

from mcp.server import Server
from mcp.server.stdio import stdio_server
from mcp.types import Tool, TextContent

from .config import load_config, resolve_seed
from .exceptions import BcFrameError
from .router import CommandRouter, format_summary
from .utils.codec import dumps


# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=[logging.StreamHandler(sys.stderr)]
)
logger = logging.getLogger(__name__)


# Global state
_server: Optional[Server] = None
_config: dict = {}

SPEC_PROPERTY = {
    "type": "object",
    "description": "The spec document, or {\"fixture\": name} for a stock fixture",
}
SEED_PROPERTY = {
    "type": "integer",
    "description": "Seed for random draws (default: configured seed)",
}

TOOLS = {
    "analyze_bc_frame": ("analyze", "Classify a bicomplex frame family: bounds A, B from component "
                         "spectra, tight/Parseval/exact/Riesz flags, N_Exact sets and eigenvalue evidence."),
    "dual_bc_frame": ("dual", "Canonical dual frame S^-1 f_n and the worst reconstruction residual."),
    "reconstruct_bc_signal": ("reconstruct", "Reconstruct supplied (or random) signals through the "
                              "canonical dual and report the residuals."),
    "analyze_bc_gabor": ("gabor", "Bicomplex Weyl-Heisenberg system on Z_N: component and bc bounds, "
                         "painless-case prediction, densities and critical-density exactness."),
    "analyze_psi_system": ("psi", "Hyperbolic-plane psi system: Bessel constant under grid refinement and "
                           "the Hermite witnesses showing the lower frame bound fails."),
}


def create_server() -> Server:
    """Create and configure the MCP server."""
    server = Server("bicomplex-frames")

    @server.list_tools()
    async def list_tools() -> list[Tool]:
        """List available MCP tools."""
        tools = [
            Tool(
                name=name,
                description=description,
                inputSchema={
                    "type": "object",
                    "properties": {"spec": SPEC_PROPERTY, "seed": SEED_PROPERTY},
                    "required": ["spec"],
                },
            )
            for name, (_, description) in TOOLS.items()
        ]
        tools.append(Tool(
            name="run_selftest",
            description="Run the acceptance suite and report pass/fail with measured values per criterion.",
            inputSchema={
                "type": "object",
                "properties": {
                    "quick": {"type": "boolean", "default": True, "description": "Run the quick subset"},
                    "only": {"type": "array", "items": {"type": "string"}, "description": "Run only the named criteria"},
                    "seed": SEED_PROPERTY,
                },
            },
        ))
        return tools

    @server.call_tool()
    async def call_tool(name: str, arguments: dict) -> list[TextContent]:
        """Handle tool calls."""
        return await dispatch_tool(name, arguments)

    return server


async def dispatch_tool(name: str, arguments: dict) -> list[TextContent]:
    """Route one tool call; errors come back as text content."""
    if not _config:
        return [TextContent(type="text", text="Error: Server not initialized. No configuration loaded.")]

    try:
        if name in TOOLS:
            return await handle_command(TOOLS[name][0], arguments)
        elif name == "run_selftest":
            return await handle_selftest(arguments)
        else:
            return [TextContent(type="text", text=f"Unknown tool: {name}")]
    except BcFrameError as e:
        logger.warning(f"Tool {name} rejected request: {e}")
        return [TextContent(type="text", text=f"Error ({type(e).__name__}): {e}")]
    except Exception as e:
        logger.error(f"Tool error ({name}): {e}", exc_info=True)
        return [TextContent(type="text", text=f"Error executing {name}: {str(e)}")]


def _router(arguments: dict) -> CommandRouter:
    return CommandRouter(_config, resolve_seed(_config, arguments.get("seed")))


def _respond(payload: dict[str, Any]) -> list[TextContent]:
    return [
        TextContent(type="text", text=format_summary(payload)),
        TextContent(type="text", text=dumps(payload)),
    ]


async def handle_command(command: str, arguments: dict) -> list[TextContent]:
    """Handle one of the spec-driven tools."""
    spec = arguments.get("spec")
    if spec is None:
        return [TextContent(type="text", text="Error: spec is required")]
    logger.info(f"{command}: spec keys={sorted(spec) if isinstance(spec, dict) else type(spec).__name__}")
    payload = await asyncio.to_thread(_router(arguments).run, command, spec)
    return _respond(payload)


async def handle_selftest(arguments: dict) -> list[TextContent]:
    """Handle run_selftest tool call."""
    quick = bool(arguments.get("quick", True))
    only = arguments.get("only") or None
    logger.info(f"Selftest: quick={quick} only={only}")
    payload = await asyncio.to_thread(_router(arguments).run, "selftest", None, quick=quick, only=only)
    return _respond(payload)


async def initialize_server(config_path: Optional[Path] = None) -> None:
    """Load configuration."""
    global _config
    _config = load_config(config_path)
    logger.info(f"Configuration loaded (seed={resolve_seed(_config)})")


async def run_server() -> None:
    """Run the MCP server."""
    global _server

    await initialize_server()
    _server = create_server()

    logger.info("Starting bicomplex-frames MCP server...")

    # Run with stdio transport
    async with stdio_server() as (read_stream, write_stream):
        await _server.run(
            read_stream,
            write_stream,
            _server.create_initialization_options()
        )


def main() -> None:
    """Entry point for the MCP server."""
    try:
        asyncio.run(run_server())
    except KeyboardInterrupt:
        logger.info("Server stopped by user")
    except Exception as e:
        logger.error(f"Server error: {e}", exc_info=True)
        sys.exit(1)


if __name__ == "__main__":
    main()

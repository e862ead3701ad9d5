"""A scripted chat-completion server for dry runs and harness tests.

Answers are looked up by the exact user-message content, so a run
against this server is fully deterministic. The request counter makes
cache behaviour observable from tests.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer


class ScriptedChatServer:
    """Threaded HTTP server speaking the chat-completion wire shape.

    ``answers`` maps user-message content to the reply text. Requests
    whose user content contains ``fail_substring`` are answered with 500
    on every attempt, which lets tests exercise permanent failures.
    """

    def __init__(
        self,
        answers: dict[str, str],
        *,
        fallback: str = "",
        fail_substring: str | None = None,
        port: int = 0,
    ):
        self.answers = answers
        self.fallback = fallback
        self.fail_substring = fail_substring
        self._lock = threading.Lock()
        self._count = 0
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self) -> None:  # noqa: N802 (stdlib naming)
                length = int(self.headers.get("Content-Length", "0"))
                payload = json.loads(self.rfile.read(length).decode("utf-8"))
                with outer._lock:
                    outer._count += 1
                user = next(
                    (m["content"] for m in reversed(payload.get("messages", [])) if m.get("role") == "user"),
                    "",
                )
                if outer.fail_substring and outer.fail_substring in user:
                    self.send_response(500)
                    self.end_headers()
                    self.wfile.write(b"scripted failure")
                    return
                text = outer.answers.get(user, outer.fallback or user)
                body = json.dumps(
                    {
                        "choices": [{"message": {"role": "assistant", "content": text}, "finish_reason": "stop"}],
                        "usage": {"prompt_tokens": len(user), "completion_tokens": len(text)},
                    },
                    ensure_ascii=False,
                ).encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

            def log_message(self, *args: object) -> None:  # silence stderr noise
                pass

        self._server = ThreadingHTTPServer(("127.0.0.1", port), Handler)
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)

    @property
    def request_count(self) -> int:
        with self._lock:
            return self._count

    @property
    def base_url(self) -> str:
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}"

    def __enter__(self) -> "ScriptedChatServer":
        self._thread.start()
        return self

    def __exit__(self, *exc: object) -> None:
        self._server.shutdown()
        self._server.server_close()

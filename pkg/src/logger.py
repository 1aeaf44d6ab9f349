import json
import uuid
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from .storage.data_store import CustomJSONEncoder


class SessionLogger:
    """Records each command run as a session of timestamped interactions.

    With `enabled=False` sessions are kept in memory and nothing touches the disk.
    """

    def __init__(self, log_dir: str = "data/logs", enabled: bool = True):
        self.enabled = enabled
        self.log_dir = Path(log_dir)
        self.sessions_file = self.log_dir / "sessions.json"
        self.sessions: Dict[str, Dict[str, Any]] = {}
        self.current_session: Optional[str] = None
        if self.enabled:
            self.log_dir.mkdir(parents=True, exist_ok=True)
            self._load_sessions()

    def _load_sessions(self) -> None:
        """Load existing sessions from file."""
        if self.sessions_file.exists():
            self.sessions = json.loads(self.sessions_file.read_text())

    def _save_sessions(self) -> None:
        if self.enabled:
            self.sessions_file.write_text(
                json.dumps(self.sessions, indent=2, cls=CustomJSONEncoder)
            )

    def start_session(self, session_type: str) -> str:
        session_id = str(uuid.uuid4())
        self.sessions[session_id] = {
            "type": session_type,
            "start_time": datetime.now().isoformat(),
            "end_time": None,
            "interactions": [],
        }
        self.current_session = session_id
        return session_id

    def log_interaction(self, session_id: str, interaction: Dict[str, Any]) -> None:
        if session_id not in self.sessions:
            raise ValueError(f"Session {session_id} not found")
        self.sessions[session_id]["interactions"].append(
            {"timestamp": datetime.now().isoformat(), **interaction}
        )
        self._save_sessions()

    def end_session(self, session_id: str) -> None:
        if session_id not in self.sessions:
            raise ValueError(f"Session {session_id} not found")
        self.sessions[session_id]["end_time"] = datetime.now().isoformat()
        if self.current_session == session_id:
            self.current_session = None
        self._save_sessions()

    def get_recent_sessions(
        self, limit: int = 10, session_type: Optional[str] = None
    ) -> List[Dict]:
        """Most recent sessions first, optionally of one command only."""
        chosen = [
            {**session, "id": session_id}
            for session_id, session in self.sessions.items()
            if session_type is None or session["type"] == session_type
        ]
        return sorted(chosen, key=lambda s: s["start_time"], reverse=True)[:limit]

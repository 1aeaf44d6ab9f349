from .data_store import ArtifactStore, CustomJSONEncoder, certificate_path, dump_document

__all__ = ["ArtifactStore", "CustomJSONEncoder", "certificate_path", "dump_document"]

from pathlib import Path


def list_local_files(directory, extension=None):
    """
    List the files of a local directory, optionally filtered by extension.

    Args:
        directory (str): Directory path.
        extension (str, optional): File extension to keep (e.g., '.swv').

    Returns:
        list: Sorted file paths.

    Raises:
        FileNotFoundError: If the directory does not exist.
    """
    directory = Path(directory)
    if not directory.exists() or not directory.is_dir():
        raise FileNotFoundError(f"Directory {directory} does not exist or is not a directory.")

    files = directory.glob(f"*{extension}" if extension else "*")
    return sorted(str(file) for file in files if file.is_file())

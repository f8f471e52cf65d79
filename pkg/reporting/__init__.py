# Reporting Module
# CSV / JSON output shared by every command
from .writers import format_value, render_csv, render_json, write_output, write_records

"""Small XML document builders shared by tests."""

from __future__ import annotations


def minimal(body: str = "", meta_extra: str = "", definition: str = '<definition text="d" theme="t"/>') -> str:
    return f"""<nnn>
  <meta>
    <title text="t"/>
    {definition}
    <version id="1"/>
    <validation status="research"/>
    <date text="2020-01-01"/>
    {meta_extra}
  </meta>
  <guideline>{body}</guideline>
</nnn>"""

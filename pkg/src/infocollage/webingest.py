"""Fetch-and-strip ingestion: pull a page, reduce markup to plain text,
discover the favicon URL."""

from __future__ import annotations

import urllib.parse
from html.parser import HTMLParser

import httpx

from .errors import IoFailure

_SKIPPED_SUBTREES = {"script", "style", "noscript", "template"}


class _PageScraper(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self._skip_depth = 0
        self.chunks: list[str] = []
        self.icon_href: str | None = None

    def handle_starttag(self, tag, attrs):
        if tag in _SKIPPED_SUBTREES:
            self._skip_depth += 1
        elif tag == "link" and self.icon_href is None:
            attrs = dict(attrs)
            rel = (attrs.get("rel") or "").lower().split()
            if "icon" in rel and attrs.get("href"):
                self.icon_href = attrs["href"]

    def handle_endtag(self, tag):
        if tag in _SKIPPED_SUBTREES and self._skip_depth:
            self._skip_depth -= 1

    def handle_data(self, data):
        if not self._skip_depth and data.strip():
            self.chunks.append(data)


def extract_text(html: str) -> str:
    """Page text with script/style subtrees dropped and whitespace collapsed."""
    scraper = _PageScraper()
    scraper.feed(html)
    return " ".join(" ".join(scraper.chunks).split())


def find_favicon(html: str, page_url: str) -> str:
    """Declared <link rel=icon> resolved against the page, else /favicon.ico
    at the site root."""
    scraper = _PageScraper()
    scraper.feed(html)
    if scraper.icon_href:
        return urllib.parse.urljoin(page_url, scraper.icon_href)
    return urllib.parse.urljoin(page_url, "/favicon.ico")


def fetch_page(url: str, timeout: float = 15.0) -> str:
    """GET the page and return its body text; network errors surface as IoFailure."""
    try:
        response = httpx.get(url, timeout=timeout, follow_redirects=True)
        response.raise_for_status()
    except httpx.HTTPError as exc:
        raise IoFailure(f"fetching {url} failed: {exc}") from exc
    return response.text

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace morfwork::text
{
	/// Decodes UTF-8. Throws morfwork::Error on malformed input.
	std::u32string decode(std::string_view utf8);
	std::string encode(std::u32string_view text);
	std::string encode(char32_t ch);

	/// Lowercases with Turkish casing rules (I -> ı, İ -> i).
	char32_t lower(char32_t ch);
	std::u32string lower(std::u32string_view text);
	std::string lower(std::string_view utf8);

	bool isLetter(char32_t ch);
	bool isDigit(char32_t ch);
	bool isWordChar(char32_t ch);

	/// Display fallback mapping ç ğ ı ö ş ü (and capitals) to C G I O S U.
	char32_t asciiFold(char32_t ch);
	std::string asciiFold(std::string_view utf8);

	std::string_view trim(std::string_view s);
	std::vector<std::string_view> splitWhitespace(std::string_view s);
	std::vector<std::string_view> split(std::string_view s, char sep);
	bool startsWith(std::string_view s, std::string_view prefix);

	/// Percent-escapes the bytes in `reserved` plus '%', tab, CR and LF.
	std::string escape(std::string_view s, std::string_view reserved);
	std::string unescape(std::string_view s);
}

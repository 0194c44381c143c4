#include <morfwork/text.hpp>
#include <morfwork/error.hpp>

#include <cctype>

namespace morfwork
{
	ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& message)
		: Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
		source_(source), line_(line), column_(column), detail_(message)
	{
	}
}

namespace morfwork::text
{
	std::u32string decode(std::string_view utf8)
	{
		std::u32string out;
		out.reserve(utf8.size());
		for (size_t i = 0; i < utf8.size();)
		{
			const auto b0 = static_cast<unsigned char>(utf8[i]);
			size_t len;
			char32_t cp;
			if (b0 < 0x80) { len = 1; cp = b0; }
			else if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; }
			else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; }
			else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; }
			else throw Error("invalid UTF-8 lead byte at offset " + std::to_string(i));
			if (i + len > utf8.size()) throw Error("truncated UTF-8 sequence at offset " + std::to_string(i));
			for (size_t k = 1; k < len; ++k)
			{
				const auto b = static_cast<unsigned char>(utf8[i + k]);
				if ((b & 0xC0) != 0x80) throw Error("invalid UTF-8 continuation at offset " + std::to_string(i + k));
				cp = (cp << 6) | (b & 0x3F);
			}
			out.push_back(cp);
			i += len;
		}
		return out;
	}

	std::string encode(char32_t ch)
	{
		std::string out;
		if (ch < 0x80) out.push_back(static_cast<char>(ch));
		else if (ch < 0x800)
		{
			out.push_back(static_cast<char>(0xC0 | (ch >> 6)));
			out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
		}
		else if (ch < 0x10000)
		{
			out.push_back(static_cast<char>(0xE0 | (ch >> 12)));
			out.push_back(static_cast<char>(0x80 | ((ch >> 6) & 0x3F)));
			out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
		}
		else
		{
			out.push_back(static_cast<char>(0xF0 | (ch >> 18)));
			out.push_back(static_cast<char>(0x80 | ((ch >> 12) & 0x3F)));
			out.push_back(static_cast<char>(0x80 | ((ch >> 6) & 0x3F)));
			out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
		}
		return out;
	}

	std::string encode(std::u32string_view text)
	{
		std::string out;
		out.reserve(text.size());
		for (char32_t ch : text) out += encode(ch);
		return out;
	}

	char32_t lower(char32_t ch)
	{
		if (ch == U'I') return U'ı';
		if (ch == U'İ') return U'i';
		if (ch >= U'A' && ch <= U'Z') return ch + 32;
		// Latin-1 capitals, skipping the multiplication sign
		if (ch >= 0xC0 && ch <= 0xDE && ch != 0xD7) return ch + 32;
		// Latin Extended-A alternates upper/lower in pairs
		if (ch == U'Ğ' || ch == U'Ş') return ch + 1;
		return ch;
	}

	std::u32string lower(std::u32string_view text)
	{
		std::u32string out(text);
		for (auto& ch : out) ch = lower(ch);
		return out;
	}

	std::string lower(std::string_view utf8)
	{
		return encode(lower(decode(utf8)));
	}

	bool isLetter(char32_t ch)
	{
		if ((ch >= U'a' && ch <= U'z') || (ch >= U'A' && ch <= U'Z')) return true;
		if (ch >= 0xC0 && ch <= 0x24F && ch != 0xD7 && ch != 0xF7) return true;
		return false;
	}

	bool isDigit(char32_t ch)
	{
		return ch >= U'0' && ch <= U'9';
	}

	bool isWordChar(char32_t ch)
	{
		return isLetter(ch) || isDigit(ch);
	}

	char32_t asciiFold(char32_t ch)
	{
		switch (ch)
		{
		case U'ç': case U'Ç': return U'C';
		case U'ğ': case U'Ğ': return U'G';
		case U'ı': case U'İ': return U'I';
		case U'ö': case U'Ö': return U'O';
		case U'ş': case U'Ş': return U'S';
		case U'ü': case U'Ü': return U'U';
		default: return ch;
		}
	}

	std::string asciiFold(std::string_view utf8)
	{
		auto s = decode(utf8);
		for (auto& ch : s) ch = asciiFold(ch);
		return encode(s);
	}

	std::string_view trim(std::string_view s)
	{
		size_t b = 0, e = s.size();
		while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
		while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
		return s.substr(b, e - b);
	}

	std::vector<std::string_view> splitWhitespace(std::string_view s)
	{
		std::vector<std::string_view> out;
		size_t i = 0;
		while (i < s.size())
		{
			while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
			size_t j = i;
			while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
			if (j > i) out.push_back(s.substr(i, j - i));
			i = j;
		}
		return out;
	}

	std::vector<std::string_view> split(std::string_view s, char sep)
	{
		std::vector<std::string_view> out;
		size_t start = 0;
		for (size_t i = 0; i <= s.size(); ++i)
		{
			if (i == s.size() || s[i] == sep)
			{
				out.push_back(s.substr(start, i - start));
				start = i + 1;
			}
		}
		return out;
	}

	bool startsWith(std::string_view s, std::string_view prefix)
	{
		return s.substr(0, prefix.size()) == prefix;
	}

	std::string escape(std::string_view s, std::string_view reserved)
	{
		static constexpr char hex[] = "0123456789ABCDEF";
		std::string out;
		out.reserve(s.size());
		for (char c : s)
		{
			if (c == '%' || c == '\t' || c == '\n' || c == '\r' || reserved.find(c) != std::string_view::npos)
			{
				const auto u = static_cast<unsigned char>(c);
				out.push_back('%');
				out.push_back(hex[u >> 4]);
				out.push_back(hex[u & 0xF]);
			}
			else out.push_back(c);
		}
		return out;
	}

	std::string unescape(std::string_view s)
	{
		auto nibble = [](char c) -> int
		{
			if (c >= '0' && c <= '9') return c - '0';
			if (c >= 'A' && c <= 'F') return c - 'A' + 10;
			if (c >= 'a' && c <= 'f') return c - 'a' + 10;
			return -1;
		};
		std::string out;
		out.reserve(s.size());
		for (size_t i = 0; i < s.size(); ++i)
		{
			if (s[i] == '%')
			{
				if (i + 2 >= s.size()) throw Error("truncated escape sequence");
				const int hi = nibble(s[i + 1]), lo = nibble(s[i + 2]);
				if (hi < 0 || lo < 0) throw Error("malformed escape sequence");
				out.push_back(static_cast<char>(hi * 16 + lo));
				i += 2;
			}
			else out.push_back(s[i]);
		}
		return out;
	}
}

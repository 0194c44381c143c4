#include <morfwork/corpus.hpp>
#include <morfwork/error.hpp>
#include <morfwork/text.hpp>

#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace morfwork
{
	namespace
	{
		// Characters that delimit fields in a token record.
		constexpr std::string_view kReserved = ":|,=+";

		struct Header
		{
			std::string_view body;
			std::size_t bodyLine;
		};

		// Splits "#magic vN\nchecksum=X\n<body>" and verifies both lines.
		Header checkHeader(std::string_view text, std::string_view magic, int version, const std::string& source)
		{
			auto nl = text.find('\n');
			const auto first = text.substr(0, nl);
			const std::string prefix = std::string(magic) + " v";
			if (!text::startsWith(first, prefix)) throw ParseError(source, 1, 1, "missing '" + std::string(magic) + "' header");
			const auto ver = first.substr(prefix.size());
			if (ver != std::to_string(version))
				throw VersionMismatch(source + ": unsupported format version " + std::string(ver) + " (expected " + std::to_string(version) + ")");
			if (nl == std::string_view::npos) throw ChecksumError(source + ": truncated file, checksum line missing");
			auto rest = text.substr(nl + 1);
			auto nl2 = rest.find('\n');
			const auto second = rest.substr(0, nl2);
			if (!text::startsWith(second, "checksum=") || nl2 == std::string_view::npos)
				throw ChecksumError(source + ": truncated file, checksum line missing");
			const auto body = rest.substr(nl2 + 1);
			if (second.substr(9) != checksumHex(body)) throw ChecksumError(source + ": checksum mismatch");
			return { body, 3 };
		}
	}

	bool isPunctuation(std::string_view token)
	{
		for (char32_t ch : text::decode(token))
			if (text::isWordChar(ch)) return false;
		return true;
	}

	std::vector<Token> tokenize(std::string_view sentence)
	{
		const auto u = text::decode(sentence);
		std::vector<Token> out;
		auto emit = [&](std::size_t b, std::size_t e) { out.push_back({ text::encode(u.substr(b, e - b)), b, e }); };
		std::size_t i = 0;
		while (i < u.size())
		{
			while (i < u.size() && (u[i] == U' ' || u[i] == U'\t' || u[i] == U'\r' || u[i] == U'\n' || u[i] == 0xA0)) ++i;
			if (i == u.size()) break;
			std::size_t j = i;
			while (j < u.size() && !(u[j] == U' ' || u[j] == U'\t' || u[j] == U'\r' || u[j] == U'\n' || u[j] == 0xA0)) ++j;
			std::size_t b = i, e = j;
			while (b < e && !text::isWordChar(u[b])) { emit(b, b + 1); ++b; }
			std::size_t tail = e;
			while (tail > b && !text::isWordChar(u[tail - 1])) --tail;
			if (b < tail) emit(b, tail);
			for (std::size_t k = tail; k < e; ++k) emit(k, k + 1);
			i = j;
		}
		return out;
	}

	std::vector<Sentence> readCorpus(std::string_view text)
	{
		std::vector<Sentence> out;
		for (auto line : text::split(text, '\n'))
		{
			if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
			if (text::trim(line).empty()) continue;
			Sentence s;
			s.id = out.size();
			s.text = std::string(text::trim(line));
			s.tokens = tokenize(s.text);
			out.push_back(std::move(s));
		}
		return out;
	}

	std::vector<Sentence> loadCorpus(const std::filesystem::path& path)
	{
		return readCorpus(readFile(path));
	}

	const TaggedSentence& TaggedCorpus::at(std::size_t id) const
	{
		if (id >= sentences.size()) throw OutOfRange("sentence " + std::to_string(id) + " out of range");
		return sentences[id];
	}

	std::string checksumHex(std::string_view data)
	{
		uLong crc = crc32(0L, Z_NULL, 0);
		// zlib takes uInt lengths; feed in chunks for very large inputs
		std::size_t off = 0;
		while (off < data.size())
		{
			const auto n = static_cast<uInt>(std::min<std::size_t>(data.size() - off, 1u << 30));
			crc = crc32(crc, reinterpret_cast<const Bytef*>(data.data() + off), n);
			off += n;
		}
		char buf[9];
		std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
		return buf;
	}

	std::string serializeTagged(const TaggedCorpus& corpus)
	{
		std::string body;
		for (auto& ts : corpus.sentences)
		{
			body += std::to_string(ts.sentence.id) + "\t" + text::escape(ts.sentence.text, "") + "\t";
			for (std::size_t t = 0; t < ts.sentence.tokens.size(); ++t)
			{
				if (t) body += '|';
				body += text::escape(ts.sentence.tokens[t].text, kReserved) + ":";
				const auto& r = t < ts.readings.size() ? ts.readings[t] : std::nullopt;
				if (!r)
				{
					body += ":::";
					continue;
				}
				body += text::escape(r->root, kReserved) + ":" + text::escape((*r)[Dimension::Category].value_or(""), kReserved) + ":";
				for (std::size_t k = 0; k < r->suffixes.size(); ++k)
					body += (k ? "+" : "") + text::escape(r->suffixes[k], kReserved);
				body += ":";
				bool first = true;
				for (auto d : kDimensions)
				{
					if (d == Dimension::Category || !(*r)[d]) continue;
					body += (first ? "" : ",") + std::string(name(d)) + "=" + text::escape(*(*r)[d], kReserved);
					first = false;
				}
			}
			body += '\n';
		}
		return "#morfwork-tagged v" + std::to_string(kTaggedFormatVersion) + "\nchecksum=" + checksumHex(body) + "\n" + body;
	}

	TaggedCorpus parseTagged(std::string_view textIn, const std::string& source)
	{
		const auto header = checkHeader(textIn, "#morfwork-tagged", kTaggedFormatVersion, source);
		TaggedCorpus corpus;
		std::size_t lineNo = header.bodyLine - 1;
		auto lines = text::split(header.body, '\n');
		if (!lines.empty() && lines.back().empty()) lines.pop_back();
		for (auto line : lines)
		{
			++lineNo;
			auto fail = [&](const std::string& msg) { throw ParseError(source, lineNo, 1, msg); };
			auto cols = text::split(line, '\t');
			if (cols.size() != 3) fail("expected id<TAB>text<TAB>tokens");
			TaggedSentence ts;
			try
			{
				ts.sentence.id = std::stoul(std::string(cols[0]));
			}
			catch (const std::exception&)
			{
				fail("bad sentence id");
			}
			if (ts.sentence.id != corpus.sentences.size()) fail("sentence ids must be consecutive from 0");
			ts.sentence.text = text::unescape(cols[1]);
			ts.sentence.tokens = tokenize(ts.sentence.text);
			std::vector<std::string_view> records;
			if (!cols[2].empty()) records = text::split(cols[2], '|');
			if (records.size() != ts.sentence.tokens.size()) fail("token count does not match sentence text");
			for (std::size_t t = 0; t < records.size(); ++t)
			{
				auto f = text::split(records[t], ':');
				if (f.size() != 5) fail("token record needs 5 ':'-separated fields");
				if (text::unescape(f[0]) != ts.sentence.tokens[t].text) fail("token '" + text::unescape(f[0]) + "' does not match sentence text");
				if (f[1].empty() && f[2].empty() && f[3].empty() && f[4].empty())
				{
					ts.readings.emplace_back();
					continue;
				}
				FeatureBundle b;
				b.root = text::unescape(f[1]);
				const auto cat = text::unescape(f[2]);
				if (!parseCategory(cat)) fail("unknown category '" + cat + "'");
				b[Dimension::Category] = cat;
				if (!f[3].empty())
					for (auto m : text::split(f[3], '+')) b.suffixes.push_back(text::unescape(m));
				if (!f[4].empty())
				{
					for (auto kv : text::split(f[4], ','))
					{
						const auto eq = kv.find('=');
						if (eq == std::string_view::npos) fail("expected feature=value");
						auto dim = parseDimension(kv.substr(0, eq));
						if (!dim || *dim == Dimension::Category) fail("unknown feature '" + std::string(kv.substr(0, eq)) + "'");
						b[*dim] = text::unescape(kv.substr(eq + 1));
					}
				}
				ts.readings.push_back(std::move(b));
			}
			corpus.sentences.push_back(std::move(ts));
		}
		return corpus;
	}

	std::string readFile(const std::filesystem::path& path)
	{
		std::ifstream in(path, std::ios::binary);
		if (!in) throw Error("cannot open " + path.string());
		std::stringstream ss;
		ss << in.rdbuf();
		return ss.str();
	}

	void writeFile(const std::filesystem::path& path, std::string_view data)
	{
		auto tmp = path;
		tmp += ".tmp";
		{
			std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
			if (!out) throw Error("cannot write " + tmp.string());
			out.write(data.data(), static_cast<std::streamsize>(data.size()));
			if (!out) throw Error("write failed: " + tmp.string());
		}
		std::filesystem::rename(tmp, path);
	}

	void saveTagged(const TaggedCorpus& corpus, const std::filesystem::path& path)
	{
		writeFile(path, serializeTagged(corpus));
	}

	TaggedCorpus loadTagged(const std::filesystem::path& path)
	{
		return parseTagged(readFile(path), path.string());
	}
}

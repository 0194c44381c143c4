#include <morfwork/index.hpp>
#include <morfwork/error.hpp>
#include <morfwork/text.hpp>

#include <algorithm>
#include <iterator>

namespace morfwork
{
	namespace
	{
		const PostingList kEmpty;

		const PostingList& get(const auto& map, const auto& key)
		{
			auto it = map.find(key);
			return it == map.end() ? kEmpty : it->second;
		}

		// Keys may hold any text; escape the separators used by the file format.
		constexpr std::string_view kReserved = "=";
	}

	const PostingList& FeatureIndex::lookup(Dimension d, const std::string& value) const
	{
		return get(postings, std::make_pair(d, value));
	}
	const PostingList& FeatureIndex::suffix(const std::string& name) const { return get(suffixPostings, name); }
	const PostingList& FeatureIndex::root(const std::string& r) const { return get(rootPostings, r); }

	FeatureIndex buildIndex(const TaggedCorpus& tagged)
	{
		FeatureIndex idx;
		// Sentences and tokens are visited in order, so every list is appended
		// in sorted order; the suffix list alone needs a duplicate guard.
		for (std::size_t s = 0; s < tagged.sentences.size(); ++s)
		{
			const auto& ts = tagged.sentences[s];
			for (std::size_t t = 0; t < ts.readings.size(); ++t)
			{
				const auto& r = ts.readings[t];
				if (!r) continue;
				const Posting p{ static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(t) };
				for (auto d : kDimensions)
					if ((*r)[d]) idx.postings[{ d, *(*r)[d] }].push_back(p);
				for (auto& m : r->suffixes)
				{
					auto& list = idx.suffixPostings[m];
					if (list.empty() || list.back() != p) list.push_back(p);
				}
				idx.rootPostings[r->root].push_back(p);
			}
		}
		return idx;
	}

	std::string serializeIndex(const FeatureIndex& index)
	{
		std::map<std::string, const PostingList*> lines;
		for (auto& [k, v] : index.postings)
			lines[std::string(name(k.first)) + "=" + text::escape(k.second, kReserved)] = &v;
		for (auto& [k, v] : index.suffixPostings) lines["suffix=" + text::escape(k, kReserved)] = &v;
		for (auto& [k, v] : index.rootPostings) lines["root=" + text::escape(k, kReserved)] = &v;

		std::string body;
		for (auto& [key, list] : lines)
		{
			body += key;
			body += '\t';
			for (std::size_t i = 0; i < list->size(); ++i)
			{
				if (i) body += ',';
				body += std::to_string((*list)[i].sentence) + ":" + std::to_string((*list)[i].token);
			}
			body += '\n';
		}
		return "#morfwork-index v" + std::to_string(kIndexFormatVersion) + "\nchecksum=" + checksumHex(body) + "\n" + body;
	}

	FeatureIndex parseIndex(std::string_view textIn, const std::string& source)
	{
		// header handling mirrors the tagged format
		auto nl = textIn.find('\n');
		const auto first = textIn.substr(0, nl);
		const std::string prefix = "#morfwork-index v";
		if (!text::startsWith(first, prefix)) throw ParseError(source, 1, 1, "missing '#morfwork-index' header");
		if (first.substr(prefix.size()) != std::to_string(kIndexFormatVersion))
			throw VersionMismatch(source + ": unsupported index version " + std::string(first.substr(prefix.size())));
		if (nl == std::string_view::npos) throw ChecksumError(source + ": truncated file, checksum line missing");
		auto rest = textIn.substr(nl + 1);
		auto nl2 = rest.find('\n');
		if (nl2 == std::string_view::npos || !text::startsWith(rest, "checksum="))
			throw ChecksumError(source + ": truncated file, checksum line missing");
		const auto body = rest.substr(nl2 + 1);
		if (rest.substr(9, nl2 - 9) != checksumHex(body)) throw ChecksumError(source + ": checksum mismatch");

		FeatureIndex idx;
		std::size_t lineNo = 2;
		auto lines = text::split(body, '\n');
		if (!lines.empty() && lines.back().empty()) lines.pop_back();
		for (auto line : lines)
		{
			++lineNo;
			auto fail = [&](const std::string& msg) { throw ParseError(source, lineNo, 1, msg); };
			const auto tab = line.find('\t');
			if (tab == std::string_view::npos) fail("expected key<TAB>postings");
			const auto key = line.substr(0, tab);
			const auto eq = key.find('=');
			if (eq == std::string_view::npos) fail("expected dim=value key");
			const auto kind = key.substr(0, eq);
			const auto value = text::unescape(key.substr(eq + 1));

			PostingList list;
			const auto data = line.substr(tab + 1);
			if (!data.empty())
			{
				for (auto item : text::split(data, ','))
				{
					const auto colon = item.find(':');
					if (colon == std::string_view::npos) fail("expected sid:tid");
					try
					{
						std::size_t u1 = 0, u2 = 0;
						const std::string a(item.substr(0, colon)), b(item.substr(colon + 1));
						const auto s = std::stoul(a, &u1);
						const auto t = std::stoul(b, &u2);
						if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument("posting");
						list.push_back({ static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(t) });
					}
					catch (const std::invalid_argument&)
					{
						fail("malformed posting '" + std::string(item) + "'");
					}
					catch (const std::out_of_range&)
					{
						fail("posting out of range");
					}
				}
			}
			if (!std::is_sorted(list.begin(), list.end()) || std::adjacent_find(list.begin(), list.end()) != list.end())
				fail("postings must be sorted and unique");

			if (kind == "suffix") idx.suffixPostings[value] = std::move(list);
			else if (kind == "root") idx.rootPostings[value] = std::move(list);
			else if (auto d = parseDimension(kind)) idx.postings[{ *d, value }] = std::move(list);
			else fail("unknown key '" + std::string(kind) + "'");
		}
		return idx;
	}

	void saveIndex(const FeatureIndex& index, const std::filesystem::path& path)
	{
		writeFile(path, serializeIndex(index));
	}

	FeatureIndex loadIndex(const std::filesystem::path& path)
	{
		return parseIndex(readFile(path), path.string());
	}

	PostingList intersect(const PostingList& a, const PostingList& b)
	{
		PostingList out;
		std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
		return out;
	}

	PostingList unite(const PostingList& a, const PostingList& b)
	{
		PostingList out;
		std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
		return out;
	}

	PostingList subtract(const PostingList& a, const PostingList& b)
	{
		PostingList out;
		std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
		return out;
	}
}

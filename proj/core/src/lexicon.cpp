#include <morfwork/lexicon.hpp>
#include <morfwork/error.hpp>
#include <morfwork/text.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace morfwork
{
	std::u32string RootEntry::lexicalForm() const
	{
		auto form = text::decode(root);
		if (finalStopSoftens && !form.empty() && form.back() == U'k') form.back() = U'K';
		return form;
	}

	std::string RootEntry::flagsText() const
	{
		std::string out;
		if (finalStopSoftens) out = "final-stop-softens";
		if (harmonyException) out += std::string(out.empty() ? "" : ",") + "harmony-exception";
		return out;
	}

	void Lexicon::add(RootEntry entry)
	{
		if (entry.root.empty()) throw Error("empty root");
		const auto u = text::decode(entry.root);
		for (char32_t ch : u)
		{
			if (ch == kBoundarySymbol || ch == kNullSymbol) throw Error("root '" + entry.root + "' contains reserved symbol");
			if (!text::isLetter(ch)) throw Error("root '" + entry.root + "' contains a non-letter");
			if (text::lower(ch) != ch) throw Error("root '" + entry.root + "' is not lowercase");
		}
		if (entry.finalStopSoftens && u.back() != U'k')
			throw Error("root '" + entry.root + "' is flagged final-stop-softens but does not end in k");
		if (find(entry.root, entry.category))
			throw Error("duplicate entry " + entry.root + "/" + std::string(name(entry.category)));

		const auto idx = entries_.size();
		literal_[u].push_back(idx);
		if (entry.finalStopSoftens)
		{
			auto soft = u;
			soft.back() = U'ğ';
			softened_[soft].push_back(idx);
		}
		entries_.push_back(std::move(entry));
	}

	Lexicon Lexicon::parse(std::string_view tsv, const std::string& sourceName)
	{
		Lexicon lex;
		std::size_t lineNo = 0;
		for (auto raw : text::split(tsv, '\n'))
		{
			++lineNo;
			if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
			if (text::trim(raw).empty() || text::trim(raw).front() == '#') continue;
			auto cols = text::split(raw, '\t');
			if (cols.size() < 2) throw ParseError(sourceName, lineNo, 1, "expected root<TAB>category<TAB>flags<TAB>gloss");
			if (cols.size() > 4) throw ParseError(sourceName, lineNo, 1, "too many columns");
			RootEntry e;
			e.root = std::string(text::trim(cols[0]));
			auto cat = parseCategory(text::trim(cols[1]));
			if (!cat) throw ParseError(sourceName, lineNo, cols[0].size() + 2, "unknown category '" + std::string(cols[1]) + "'");
			e.category = *cat;
			if (cols.size() > 2)
			{
				for (auto flag : text::split(cols[2], ','))
				{
					flag = text::trim(flag);
					if (flag.empty() || flag == "-") continue;
					if (flag == "final-stop-softens") e.finalStopSoftens = true;
					else if (flag == "harmony-exception") e.harmonyException = true;
					else throw ParseError(sourceName, lineNo, cols[0].size() + cols[1].size() + 3, "unknown flag '" + std::string(flag) + "'");
				}
			}
			if (cols.size() > 3) e.gloss = std::string(text::trim(cols[3]));
			try
			{
				lex.add(std::move(e));
			}
			catch (const ParseError&)
			{
				throw;
			}
			catch (const Error& err)
			{
				throw ParseError(sourceName, lineNo, 1, err.what());
			}
		}
		return lex;
	}

	Lexicon Lexicon::load(const std::filesystem::path& path)
	{
		std::ifstream in(path, std::ios::binary);
		if (!in) throw Error("cannot open lexicon " + path.string());
		std::stringstream ss;
		ss << in.rdbuf();
		return parse(ss.str(), path.string());
	}

	const RootEntry* Lexicon::find(std::string_view root, Category category) const
	{
		auto it = literal_.find(text::decode(root));
		if (it == literal_.end()) return nullptr;
		for (auto idx : it->second)
			if (entries_[idx].category == category) return &entries_[idx];
		return nullptr;
	}

	std::vector<const RootEntry*> Lexicon::find(std::string_view root) const
	{
		std::vector<const RootEntry*> out;
		auto it = literal_.find(text::decode(root));
		if (it != literal_.end())
			for (auto idx : it->second) out.push_back(&entries_[idx]);
		return out;
	}

	std::vector<const RootEntry*> Lexicon::candidateRoots(std::u32string_view word) const
	{
		std::vector<std::size_t> hits;
		for (std::size_t len = word.size(); len >= 1; --len)
		{
			const std::u32string prefix(word.substr(0, len));
			const auto before = hits.size();
			if (auto it = literal_.find(prefix); it != literal_.end())
				hits.insert(hits.end(), it->second.begin(), it->second.end());
			if (auto it = softened_.find(prefix); it != softened_.end())
				hits.insert(hits.end(), it->second.begin(), it->second.end());
			std::sort(hits.begin() + static_cast<std::ptrdiff_t>(before), hits.end());
		}
		std::vector<const RootEntry*> out;
		for (auto idx : hits)
		{
			if (std::find(out.begin(), out.end(), &entries_[idx]) == out.end()) out.push_back(&entries_[idx]);
		}
		return out;
	}
}

#include <morfwork/search.hpp>
#include <morfwork/analyzer.hpp>
#include <morfwork/error.hpp>
#include <morfwork/text.hpp>

#include <algorithm>

namespace morfwork
{
	bool Query::empty() const
	{
		for (auto& v : values)
			if (v) return false;
		return !suffix && !root;
	}

	std::string Query::str() const
	{
		std::string s;
		auto add = [&](std::string_view k, const std::string& v) { s += (s.empty() ? "" : ",") + std::string(k) + "=" + v; };
		for (auto d : kDimensions)
			if ((*this)[d]) add(name(d), *(*this)[d]);
		if (suffix) add("suffix", *suffix);
		if (root) add("root", *root);
		return s;
	}

	Query Query::fromPairs(const std::vector<std::pair<std::string, std::string>>& pairs)
	{
		Query q;
		for (auto& [k, v] : pairs)
		{
			if (v.empty()) throw InvalidQuery("empty value for '" + k + "'");
			std::optional<std::string>* slot = nullptr;
			if (k == "suffix") slot = &q.suffix;
			else if (k == "root") slot = &q.root;
			else if (auto d = parseDimension(k)) slot = &q[*d];
			else throw InvalidQuery("unknown query field '" + k + "'");
			if (*slot) throw InvalidQuery("field '" + k + "' given twice");
			*slot = k == "root" ? text::lower(std::string_view(v)) : v;
		}
		if (q.empty()) throw InvalidQuery("empty query: set at least one feature");
		return q;
	}

	ImplicationTable ImplicationTable::defaults()
	{
		ImplicationTable t;
		t.implies_ = {
			{ Dimension::Case, Category::Noun },
			{ Dimension::Possessive, Category::Noun },
			{ Dimension::Voice, Category::Verb },
			{ Dimension::Sense, Category::Verb },
			{ Dimension::Aspect, Category::Verb },
			{ Dimension::Tense, Category::Verb },
		};
		t.classes_[Category::Noun] = { Category::Noun, Category::Adjective, Category::Pronoun };
		return t;
	}

	ImplicationTable ImplicationTable::parse(std::string_view textIn, const std::string& source)
	{
		ImplicationTable t;
		std::size_t lineNo = 0;
		for (auto line : text::split(textIn, '\n'))
		{
			++lineNo;
			if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
			auto toks = text::splitWhitespace(line);
			if (toks.empty()) continue;
			auto fail = [&](const std::string& msg) { throw ParseError(source, lineNo, 1, msg); };
			auto category = [&](std::string_view s)
			{
				auto c = parseCategory(s);
				if (!c) fail("unknown category '" + std::string(s) + "'");
				return *c;
			};
			if (toks[0] == "implied-match")
			{
				if (toks.size() < 4 || toks[2] != "=") fail("expected 'implied-match CATEGORY = CATEGORY ...'");
				auto& cls = t.classes_[category(toks[1])];
				for (std::size_t i = 3; i < toks.size(); ++i) cls.insert(category(toks[i]));
			}
			else
			{
				if (toks.size() != 3 || toks[1] != "=>" || !text::startsWith(toks[2], "category="))
					fail("expected 'DIMENSION => category=VALUE'");
				auto d = parseDimension(toks[0]);
				if (!d || *d == Dimension::Category) fail("unknown dimension '" + std::string(toks[0]) + "'");
				if (t.implies_.count(*d)) fail("dimension '" + std::string(toks[0]) + "' has two implications");
				t.implies_[*d] = category(toks[2].substr(9));
			}
		}
		return t;
	}

	ImplicationTable ImplicationTable::load(const std::filesystem::path& path)
	{
		return parse(readFile(path), path.string());
	}

	std::optional<Category> ImplicationTable::implied(Dimension d) const
	{
		auto it = implies_.find(d);
		if (it == implies_.end()) return std::nullopt;
		return it->second;
	}

	const std::set<Category>& ImplicationTable::matchClass(Category c) const
	{
		auto it = classes_.find(c);
		if (it != classes_.end()) return it->second;
		static const std::array<std::set<Category>, 4> self = { {
			{ Category::Noun }, { Category::Adjective }, { Category::Verb }, { Category::Pronoun },
		} };
		return self[static_cast<std::size_t>(c)];
	}

	Expansion impliedFeatures(const Query& q, const ImplicationTable& table)
	{
		struct Source
		{
			Dimension dim;
			std::string value;
			Category implied;
		};
		std::vector<Source> sources;
		for (auto d : kDimensions)
		{
			if (d == Dimension::Category || !q[d]) continue;
			if (auto c = table.implied(d)) sources.push_back({ d, *q[d], *c });
		}

		auto pairText = [](std::string_view d, std::string_view v) { return std::string(d) + "=" + std::string(v); };

		for (std::size_t i = 1; i < sources.size(); ++i)
		{
			if (sources[i].implied == sources[0].implied) continue;
			Conflict c;
			c.features = { { std::string(name(sources[0].dim)), sources[0].value },
				{ std::string(name(sources[i].dim)), sources[i].value } };
			c.dimension = "category";
			c.values = { std::string(name(sources[0].implied)), std::string(name(sources[i].implied)) };
			c.explanation = pairText(name(sources[0].dim), sources[0].value) + " implies category=" + c.values[0] + " but " +
				pairText(name(sources[i].dim), sources[i].value) + " implies category=" + c.values[1] +
				"; no single word can carry both";
			return c;
		}

		Query out = q;
		if (sources.empty()) return out;
		const Category implied = sources[0].implied;
		const bool explicitCategory = q[Dimension::Category] && !q.categoryImplied;
		if (explicitCategory)
		{
			const auto given = parseCategory(*q[Dimension::Category]);
			if (given && !table.matchClass(implied).count(*given))
			{
				Conflict c;
				c.features = { { "category", *q[Dimension::Category] },
					{ std::string(name(sources[0].dim)), sources[0].value } };
				c.dimension = "category";
				c.values = { *q[Dimension::Category], std::string(name(implied)) };
				c.explanation = "category=" + *q[Dimension::Category] + " was requested but " +
					pairText(name(sources[0].dim), sources[0].value) + " implies category=" + std::string(name(implied)) +
					"; no single word can carry both";
				return c;
			}
			return out;
		}
		out[Dimension::Category] = std::string(name(implied));
		out.categoryImplied = true;
		return out;
	}

	Vocabulary Vocabulary::from(const Morphotactics& morph)
	{
		Vocabulary v;
		v.values = morph.vocabulary();
		for (auto& m : morph.morphemes()) v.suffixes.insert(m.name);
		return v;
	}

	bool matches(const FeatureBundle& r, const Query& q, const ImplicationTable& table)
	{
		const auto cat = r[Dimension::Category] ? parseCategory(*r[Dimension::Category]) : std::nullopt;
		for (auto d : kDimensions)
		{
			if (!q[d]) continue;
			const auto& want = *q[d];
			if (d == Dimension::Category)
			{
				if (q.categoryImplied)
				{
					auto qc = parseCategory(want);
					if (!qc || !cat || !table.matchClass(*qc).count(*cat)) return false;
				}
				else if (!r.has(d, want))
					return false;
			}
			else if (d == Dimension::Case && want == "nominative")
			{
				if (!cat || !isNominal(*cat) || r[Dimension::Case]) return false;
			}
			else if (!r.has(d, want))
				return false;
		}
		if (q.suffix && !r.hasSuffix(*q.suffix)) return false;
		if (q.root && r.root != *q.root) return false;
		return true;
	}

	Searcher::Searcher(const TaggedCorpus& tagged, const FeatureIndex& index, Vocabulary vocabulary, ImplicationTable table)
		: tagged_(tagged), index_(index), vocab_(std::move(vocabulary)), table_(std::move(table))
	{
	}

	void Searcher::validate(const Query& q) const
	{
		if (q.empty()) throw InvalidQuery("empty query: set at least one feature");
		for (auto d : kDimensions)
		{
			if (!q[d]) continue;
			auto it = vocab_.values.find(d);
			if (it == vocab_.values.end() || !it->second.count(*q[d]))
				throw UnknownFeatureValue("unknown value '" + *q[d] + "' for " + std::string(name(d)));
		}
		if (q.suffix && !vocab_.suffixes.count(*q.suffix)) throw UnknownFeatureValue("unknown suffix '" + *q.suffix + "'");
		if (q.root && q.root->empty()) throw InvalidQuery("empty root");
	}

	PostingList Searcher::indexPostings(const Query& q) const
	{
		std::optional<PostingList> acc;
		auto narrow = [&](PostingList list)
		{
			acc = acc ? intersect(*acc, list) : std::move(list);
		};
		auto categoryList = [&](Category c) { return index_.lookup(Dimension::Category, std::string(name(c))); };

		for (auto d : kDimensions)
		{
			if (!q[d]) continue;
			if (d == Dimension::Category && q.categoryImplied)
			{
				PostingList u;
				if (auto qc = parseCategory(*q[d]))
					for (auto c : table_.matchClass(*qc)) u = unite(u, categoryList(c));
				narrow(std::move(u));
			}
			else if (d == Dimension::Case && *q[d] == "nominative")
			{
				PostingList nominal, cased;
				for (auto c : kCategories)
					if (isNominal(c)) nominal = unite(nominal, categoryList(c));
				for (auto& [key, list] : index_.postings)
					if (key.first == Dimension::Case) cased = unite(cased, list);
				narrow(subtract(nominal, cased));
			}
			else
			{
				narrow(index_.lookup(d, *q[d]));
			}
			if (acc->empty()) return {};
		}
		if (q.suffix) narrow(index_.suffix(*q.suffix));
		if (q.root) narrow(index_.root(*q.root));
		return acc.value_or(PostingList{});
	}

	PostingList Searcher::scanPostings(const Query& q) const
	{
		PostingList out;
		for (std::size_t s = 0; s < tagged_.sentences.size(); ++s)
		{
			const auto& rs = tagged_.sentences[s].readings;
			for (std::size_t t = 0; t < rs.size(); ++t)
				if (rs[t] && matches(*rs[t], q, table_))
					out.push_back({ static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(t) });
		}
		return out;
	}

	std::vector<SentenceHit> Searcher::group(const PostingList& postings) const
	{
		std::vector<SentenceHit> hits;
		for (auto& p : postings)
		{
			if (hits.empty() || hits.back().sentenceId != p.sentence)
			{
				SentenceHit h;
				h.sentenceId = p.sentence;
				h.text = tagged_.at(p.sentence).sentence.text;
				hits.push_back(std::move(h));
			}
			hits.back().matches.push_back(p.token);
		}
		return hits;
	}

	SearchResult Searcher::search(const Query& q) const
	{
		validate(q);
		auto e = expand(q);
		if (auto* c = std::get_if<Conflict>(&e)) return *c;
		return group(indexPostings(std::get<Query>(e)));
	}

	SearchResult Searcher::scan(const Query& q) const
	{
		validate(q);
		auto e = expand(q);
		if (auto* c = std::get_if<Conflict>(&e)) return *c;
		return group(scanPostings(std::get<Query>(e)));
	}

	AnalysisView analysisView(const TaggedCorpus& tagged, std::size_t sentenceId, std::size_t tokenIndex,
		const Morphotactics& morph)
	{
		const auto& ts = tagged.at(sentenceId);
		if (tokenIndex >= ts.sentence.tokens.size())
			throw OutOfRange("token " + std::to_string(tokenIndex) + " out of range in sentence " + std::to_string(sentenceId));
		const auto& r = ts.readings.at(tokenIndex);
		if (!r) throw NoAnalysis("token '" + ts.sentence.tokens[tokenIndex].text + "' has no analysis (punctuation/unknown)");

		AnalysisView v;
		v.token = ts.sentence.tokens[tokenIndex].text;
		std::vector<std::string> forms;
		for (auto& s : r->suffixes)
		{
			const Morpheme* m = morph.find(s);
			forms.push_back(m ? m->formText() : "+" + s);
		}
		v.lexicalGloss = makeGloss(r->root, forms);
		v.fields.emplace_back("Root", r->root);
		if ((*r)[Dimension::Category]) v.fields.emplace_back("Category", displayValue(Dimension::Category, *(*r)[Dimension::Category]));
		for (auto d : { Dimension::Sense, Dimension::Voice, Dimension::Agreement, Dimension::Aspect, Dimension::Case,
				 Dimension::Possessive, Dimension::Tense })
			if ((*r)[d]) v.fields.emplace_back(std::string(label(d)), displayValue(d, *(*r)[d]));
		return v;
	}
}

#include <morfwork/morphotactics.hpp>
#include <morfwork/error.hpp>
#include <morfwork/text.hpp>

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <tuple>

namespace morfwork
{
	namespace
	{
		constexpr std::array<std::string_view, 11> kSlotNames = {
			"plural", "possessive", "case", "relative", "voice", "negation",
			"modal", "maintense", "question", "secondtense", "agreement",
		};

		std::uint32_t bit(Dimension d) { return 1u << static_cast<unsigned>(d); }
	}

	Paradigm paradigmOf(Category c)
	{
		return c == Category::Verb ? Paradigm::Verbal : Paradigm::Nominal;
	}

	std::string_view name(Slot s) { return kSlotNames[static_cast<std::size_t>(s)]; }

	std::optional<Slot> parseSlot(std::string_view s)
	{
		for (std::size_t i = 0; i < kSlotNames.size(); ++i)
			if (kSlotNames[i] == s) return static_cast<Slot>(i);
		return std::nullopt;
	}

	std::optional<Dimension> ownedDimension(Slot s)
	{
		switch (s)
		{
		case Slot::Plural: return Dimension::Agreement;
		case Slot::Possessive: return Dimension::Possessive;
		case Slot::Case: return Dimension::Case;
		case Slot::Voice: return Dimension::Voice;
		case Slot::Negation:
		case Slot::Modal: return Dimension::Sense;
		case Slot::MainTense: return Dimension::Aspect;
		case Slot::SecondTense: return Dimension::Tense;
		case Slot::Agreement: return Dimension::Agreement;
		case Slot::Relative:
		case Slot::Question: return std::nullopt;
		}
		return std::nullopt;
	}

	std::string Morpheme::formText() const
	{
		return isZero() ? "0" : text::encode(lexicalForm);
	}

	Morphotactics::Morphotactics(const Morphotactics& other)
		: morphemes_(other.morphemes_), slots_(other.slots_)
	{
		build();
	}

	Morphotactics& Morphotactics::operator=(const Morphotactics& other)
	{
		if (this != &other)
		{
			morphemes_ = other.morphemes_;
			slots_ = other.slots_;
			build();
		}
		return *this;
	}

	Morphotactics Morphotactics::parse(std::string_view text, const std::string& sourceName)
	{
		Morphotactics m;
		std::array<bool, 2> declared{ false, false };
		std::map<Slot, Paradigm> slotOwner;
		std::size_t lineNo = 0;

		struct Pending
		{
			Morpheme morpheme;
			std::size_t line;
		};
		std::vector<Pending> pending;

		for (auto raw : text::split(text, '\n'))
		{
			++lineNo;
			auto hash = raw.find('#');
			if (hash != std::string_view::npos) raw = raw.substr(0, hash);
			auto tokens = text::splitWhitespace(raw);
			if (tokens.empty()) continue;
			auto fail = [&](const std::string& msg) -> void { throw ParseError(sourceName, lineNo, 1, msg); };

			if (tokens[0] == "PARADIGM")
			{
				if (tokens.size() < 2 || tokens[1].empty() || tokens[1].back() != ':')
					fail("expected 'PARADIGM nominal:' or 'PARADIGM verbal:'");
				const auto pname = tokens[1].substr(0, tokens[1].size() - 1);
				Paradigm p;
				if (pname == "nominal") p = Paradigm::Nominal;
				else if (pname == "verbal") p = Paradigm::Verbal;
				else fail("unknown paradigm '" + std::string(pname) + "'");
				if (declared[static_cast<int>(p)]) fail("paradigm '" + std::string(pname) + "' declared twice");
				declared[static_cast<int>(p)] = true;
				for (std::size_t i = 2; i < tokens.size(); ++i)
				{
					auto tok = tokens[i];
					const bool optional = !tok.empty() && tok.back() == '?';
					if (optional) tok.remove_suffix(1);
					auto slot = parseSlot(tok);
					if (!slot) fail("unknown slot '" + std::string(tok) + "'");
					if (slotOwner.count(*slot))
						fail("cycle detected: slot '" + std::string(tok) + "' occurs more than once");
					slotOwner[*slot] = p;
					m.slots_[static_cast<int>(p)].push_back({ *slot, optional });
				}
			}
			else if (tokens[0] == "MORPHEME")
			{
				if (tokens.size() < 4) fail("expected 'MORPHEME name slot lexicalform feature=value ...'");
				Morpheme morph;
				morph.name = std::string(tokens[1]);
				auto slot = parseSlot(tokens[2]);
				if (!slot) fail("unknown slot '" + std::string(tokens[2]) + "'");
				morph.slot = *slot;
				if (tokens[3] != "0")
				{
					morph.lexicalForm = text::decode(tokens[3]);
					if (morph.lexicalForm.size() < 2 || morph.lexicalForm.front() != kBoundarySymbol)
						fail("lexical form must start with '+' (or be 0 for a zero morpheme)");
					if (morph.lexicalForm.find(kBoundarySymbol, 1) != std::u32string::npos ||
						morph.lexicalForm.find(kNullSymbol) != std::u32string::npos)
						fail("lexical form may not contain inner '+' or '0'");
				}
				for (std::size_t i = 4; i < tokens.size(); ++i)
				{
					const auto eq = tokens[i].find('=');
					if (eq == std::string_view::npos || eq == 0 || eq + 1 == tokens[i].size())
						fail("expected feature=value, got '" + std::string(tokens[i]) + "'");
					auto dim = parseDimension(tokens[i].substr(0, eq));
					if (!dim || *dim == Dimension::Category)
						fail("unknown feature dimension '" + std::string(tokens[i].substr(0, eq)) + "'");
					if (ownedDimension(*slot) != dim)
						fail("slot '" + std::string(name(*slot)) + "' may not assign " + std::string(name(*dim)));
					for (auto& [d, v] : morph.features)
						if (d == *dim) fail("dimension assigned twice in one morpheme");
					morph.features.emplace_back(*dim, std::string(tokens[i].substr(eq + 1)));
				}
				pending.push_back({ std::move(morph), lineNo });
			}
			else
			{
				fail("expected PARADIGM or MORPHEME, got '" + std::string(tokens[0]) + "'");
			}
		}

		for (auto& p : pending)
		{
			if (!slotOwner.count(p.morpheme.slot))
				throw ParseError(sourceName, p.line, 1, "morpheme " + p.morpheme.name + " references undeclared slot '" +
					std::string(name(p.morpheme.slot)) + "'");
			for (auto& other : m.morphemes_)
				if (other.name == p.morpheme.name)
					throw ParseError(sourceName, p.line, 1, "duplicate morpheme name " + p.morpheme.name);
			m.morphemes_.push_back(std::move(p.morpheme));
		}
		m.build();
		return m;
	}

	Morphotactics Morphotactics::load(const std::filesystem::path& path)
	{
		std::ifstream in(path, std::ios::binary);
		if (!in) throw Error("cannot open paradigm file " + path.string());
		std::stringstream ss;
		ss << in.rdbuf();
		return parse(ss.str(), path.string());
	}

	void Morphotactics::build()
	{
		states_.clear();
		std::map<std::tuple<int, std::size_t, std::uint32_t>, StateId> ids;
		std::deque<StateId> queue;

		auto intern = [&](Paradigm p, std::size_t pos, std::uint32_t mask) -> StateId
		{
			auto key = std::make_tuple(static_cast<int>(p), pos, mask);
			auto it = ids.find(key);
			if (it != ids.end()) return it->second;
			const auto id = static_cast<StateId>(states_.size());
			states_.push_back({ p, pos, mask, false, {} });
			ids.emplace(key, id);
			queue.push_back(id);
			return id;
		};

		auto slotHasMorphemes = [&](Slot s)
		{
			return std::any_of(morphemes_.begin(), morphemes_.end(), [&](const Morpheme& m) { return m.slot == s; });
		};

		starts_[0] = intern(Paradigm::Nominal, 0, 0);
		starts_[1] = intern(Paradigm::Verbal, 0, 0);
		while (!queue.empty())
		{
			const StateId id = queue.front();
			queue.pop_front();
			const auto paradigm = states_[id].paradigm;
			const auto pos = states_[id].position;
			const auto mask = states_[id].assigned;
			const auto& slots = slots_[static_cast<int>(paradigm)];

			std::vector<Transition> transitions;
			bool accepting = true;
			for (std::size_t j = pos; j < slots.size(); ++j)
			{
				for (auto& m : morphemes_)
				{
					if (m.slot != slots[j].slot) continue;
					std::uint32_t dims = 0;
					for (auto& [d, v] : m.features) dims |= bit(d);
					if (dims & mask) continue;
					const StateId target = intern(paradigm, j + 1, mask | dims);
					transitions.push_back({ &m, target });
				}
				// A mandatory slot with no morphemes cannot be filled; treat it as skippable.
				if (!slots[j].optional && slotHasMorphemes(slots[j].slot))
				{
					accepting = false;
					break;
				}
			}
			states_[id].transitions = std::move(transitions);
			states_[id].accepting = accepting;
		}
	}

	const Morpheme* Morphotactics::find(std::string_view name) const
	{
		for (auto& m : morphemes_)
			if (m.name == name) return &m;
		return nullptr;
	}

	std::vector<const Morpheme*> Morphotactics::successors(StateId s) const
	{
		std::vector<const Morpheme*> out;
		for (auto& t : transitions(s)) out.push_back(t.morpheme);
		return out;
	}

	std::optional<Morphotactics::StateId> Morphotactics::next(StateId s, const Morpheme& m) const
	{
		for (auto& t : transitions(s))
			if (t.morpheme == &m) return t.target;
		return std::nullopt;
	}

	std::optional<std::vector<const Morpheme*>> Morphotactics::acceptPath(Category c, const std::vector<std::string>& names) const
	{
		std::vector<const Morpheme*> path;
		StateId s = start(c);
		for (auto& n : names)
		{
			const Morpheme* m = find(n);
			if (!m) return std::nullopt;
			auto t = next(s, *m);
			if (!t) return std::nullopt;
			s = *t;
			path.push_back(m);
		}
		if (!accepting(s)) return std::nullopt;
		return path;
	}

	std::vector<std::vector<const Morpheme*>> Morphotactics::enumeratePaths(Category c, std::size_t maxSuffixes) const
	{
		std::vector<std::vector<const Morpheme*>> out;
		std::vector<const Morpheme*> path;
		auto walk = [&](auto&& self, StateId s) -> void
		{
			if (accepting(s)) out.push_back(path);
			if (path.size() == maxSuffixes) return;
			for (auto& t : transitions(s))
			{
				path.push_back(t.morpheme);
				self(self, t.target);
				path.pop_back();
			}
		};
		walk(walk, start(c));
		return out;
	}

	std::size_t Morphotactics::countPaths(Category c, std::size_t maxSuffixes) const
	{
		// ways[s] = number of paths of exactly k steps from the start to s
		std::vector<std::size_t> ways(states_.size(), 0);
		ways[start(c)] = 1;
		std::size_t total = 0;
		for (std::size_t k = 0;; ++k)
		{
			for (std::size_t s = 0; s < states_.size(); ++s)
				if (states_[s].accepting) total += ways[s];
			if (k == maxSuffixes) break;
			std::vector<std::size_t> next(states_.size(), 0);
			bool any = false;
			for (std::size_t s = 0; s < states_.size(); ++s)
			{
				if (!ways[s]) continue;
				for (auto& t : states_[s].transitions)
				{
					next[t.target] += ways[s];
					any = true;
				}
			}
			if (!any) break;
			ways = std::move(next);
		}
		return total;
	}

	std::map<Dimension, std::set<std::string>> Morphotactics::vocabulary() const
	{
		std::map<Dimension, std::set<std::string>> out;
		for (auto d : kDimensions) out[d];
		for (auto c : kCategories) out[Dimension::Category].insert(std::string(name(c)));
		out[Dimension::Case].insert("nominative");
		for (auto& m : morphemes_)
			for (auto& [d, v] : m.features) out[d].insert(v);
		return out;
	}

	LexicalString buildLexical(const RootEntry& root, const std::vector<const Morpheme*>& morphemes)
	{
		LexicalString lex(root.lexicalForm());
		for (auto* m : morphemes) lex.append(m->name, m->lexicalForm);
		return lex;
	}

	std::vector<LexicalString> enumerateLexicalForms(const Morphotactics& morph, const RootEntry& root, std::size_t maxSuffixes)
	{
		std::vector<LexicalString> out;
		for (auto& path : morph.enumeratePaths(root.category, maxSuffixes)) out.push_back(buildLexical(root, path));
		return out;
	}
}

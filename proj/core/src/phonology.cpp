#include <morfwork/phonology.hpp>
#include <morfwork/error.hpp>
#include <morfwork/text.hpp>

#include "automaton.hpp"
#include "rules_internal.hpp"

#include <algorithm>
#include <deque>
#include <optional>

namespace morfwork
{
	std::string SymbolPair::str() const
	{
		return text::encode(lexical) + ":" + text::encode(surface);
	}

	// ---------------------------------------------------------------- lexical

	LexicalString::LexicalString(std::u32string root)
		: symbols_(std::move(root))
	{
		spans_.push_back({ 0, symbols_.size(), "root" });
	}

	LexicalString LexicalString::parse(std::string_view text)
	{
		auto parts = text::split(text, '+');
		LexicalString out(text::decode(parts.front()));
		for (std::size_t i = 1; i < parts.size(); ++i)
		{
			out.append(std::to_string(i), U"+" + text::decode(parts[i]));
		}
		return out;
	}

	void LexicalString::append(std::string_view name, std::u32string_view form)
	{
		if (form.empty())
		{
			spans_.push_back({ symbols_.size(), symbols_.size(), std::string(name) });
			return;
		}
		if (form.front() != kBoundarySymbol) throw Error("morpheme form must start with '+': " + text::encode(form));
		symbols_ += form;
		spans_.push_back({ symbols_.size() - form.size() + 1, symbols_.size(), std::string(name) });
	}

	std::string LexicalString::str() const
	{
		return text::encode(symbols_);
	}

	void LexicalString::validate(const Alphabet& alphabet) const
	{
		if (spans_.empty() || spans_.front().start != 0) throw Error("lexical string has no root span");
		for (Symbol s : symbols_)
		{
			if (s == kNullSymbol) throw Error("null symbol inside lexical string " + str());
			if (!alphabet.isDeclared(s)) throw Error("undeclared symbol '" + text::encode(s) + "' in " + str());
		}
		std::size_t cursor = 0;
		for (std::size_t i = 0; i < spans_.size(); ++i)
		{
			const auto& sp = spans_[i];
			if (sp.start > sp.end || sp.end > symbols_.size()) throw Error("span out of bounds in " + str());
			if (i > 0 && sp.start != sp.end)
			{
				if (sp.start != cursor + 1 || symbols_[cursor] != kBoundarySymbol)
					throw Error("spans must be separated by exactly one '+' in " + str());
			}
			else if (i > 0 && sp.start != cursor)
			{
				throw Error("zero morpheme span misplaced in " + str());
			}
			for (std::size_t k = sp.start; k < sp.end; ++k)
			{
				if (symbols_[k] == kBoundarySymbol) throw Error("boundary inside a span in " + str());
			}
			cursor = sp.end;
		}
		if (cursor != symbols_.size()) throw Error("spans do not cover " + str());

		auto vowels = alphabet.classes().find("Vowel");
		const auto& root = spans_.front();
		for (std::size_t k = root.start; k < root.end; ++k)
		{
			auto meta = alphabet.metaPhonemes().find(symbols_[k]);
			if (meta == alphabet.metaPhonemes().end() || vowels == alphabet.classes().end()) continue;
			if (vowels->second.count(meta->second.front()))
				throw Error("vowel meta-phoneme in root span of " + str());
		}
	}

	// --------------------------------------------------------------- alphabet

	bool Alphabet::isDeclared(Symbol s) const
	{
		return s == kBoundarySymbol || symbols_.count(s) || metas_.count(s);
	}

	int Alphabet::pairId(SymbolPair pair) const
	{
		auto it = pairIds_.find(pair);
		return it == pairIds_.end() ? -1 : it->second;
	}

	const std::vector<int>& Alphabet::pairsFor(Symbol lexical) const
	{
		static const std::vector<int> none;
		auto it = byLexical_.find(lexical);
		return it == byLexical_.end() ? none : it->second;
	}

	void Alphabet::addSymbol(Symbol s) { symbols_.insert(s); }

	void Alphabet::addClass(const std::string& name, std::set<Symbol> members)
	{
		classes_[name] = std::move(members);
	}

	void Alphabet::addMeta(Symbol meta, std::vector<Symbol> resolutions)
	{
		metas_[meta] = std::move(resolutions);
	}

	void Alphabet::addPair(SymbolPair pair)
	{
		pairs_.push_back(pair);
	}

	void Alphabet::finalize()
	{
		for (Symbol s : symbols_) pairs_.push_back({ s, s });
		for (auto& [meta, res] : metas_)
			for (Symbol r : res) pairs_.push_back({ meta, r });
		pairs_.push_back({ kBoundarySymbol, kNullSymbol });
		std::sort(pairs_.begin(), pairs_.end());
		pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
		pairIds_.clear();
		byLexical_.clear();
		for (std::size_t i = 0; i < pairs_.size(); ++i)
		{
			pairIds_[pairs_[i]] = static_cast<int>(i);
			byLexical_[pairs_[i].lexical].push_back(static_cast<int>(i));
		}
	}

	// ------------------------------------------------------------ rule text

	std::string_view operatorToken(RuleOperator op)
	{
		switch (op)
		{
		case RuleOperator::ContextRestriction: return "=>";
		case RuleOperator::SurfaceCoercion: return "<=";
		case RuleOperator::Composite: return "<=>";
		case RuleOperator::Exclusion: return "/<=";
		}
		return "?";
	}

	std::string ContextPattern::str() const
	{
		switch (kind)
		{
		case Kind::Empty: return "";
		case Kind::Atom:
			if (lexical.empty() && surface.empty()) return "?";
			if (surface.empty()) return lexical + ":";
			return lexical + ":" + surface;
		case Kind::Sequence:
		{
			std::string out;
			for (auto& item : items)
			{
				if (!out.empty()) out += ' ';
				out += item.kind == Kind::Alternation ? "(" + item.str() + ")" : item.str();
			}
			return out;
		}
		case Kind::Alternation:
		{
			std::string out;
			for (auto& item : items)
			{
				if (!out.empty()) out += " | ";
				out += item.str();
			}
			return out;
		}
		case Kind::Star:
		{
			const auto& inner = items.front();
			if (inner.kind == Kind::Atom) return inner.str() + "*";
			return "(" + inner.str() + ")*";
		}
		}
		return "";
	}

	std::string TwoLevelRule::str() const
	{
		std::string out = name + ": " + lexical + ":" + surface + " " + std::string(operatorToken(op)) + " ";
		auto l = left.str();
		auto r = right.str();
		if (!l.empty()) out += l + " ";
		out += "_";
		if (!r.empty()) out += " " + r;
		if (!where.empty())
		{
			out += " where";
			for (auto& b : where)
			{
				out += " " + b.variable + " in (";
				for (std::size_t i = 0; i < b.values.size(); ++i) out += (i ? " " : "") + b.values[i];
				out += ")";
			}
			if (matched) out += " matched";
		}
		return out + " ;";
	}

	// ------------------------------------------------------------- expansion

	namespace detail
	{
		namespace
		{
			using Env = std::map<std::string, std::string>;

			std::string substitute(const std::string& side, const Env& env)
			{
				auto it = env.find(side);
				return it == env.end() ? side : it->second;
			}

			bool sideMatches(const Alphabet& a, const std::string& side, Symbol s)
			{
				if (side.empty()) return true;
				auto cls = a.classes().find(side);
				if (cls != a.classes().end()) return cls->second.count(s) != 0;
				auto u = text::decode(side);
				return u.size() == 1 && u.front() == s;
			}

			fsa::Pattern lower(const Alphabet& a, const ContextPattern& p, const Env& env)
			{
				switch (p.kind)
				{
				case ContextPattern::Kind::Empty: return fsa::Pattern::empty();
				case ContextPattern::Kind::Atom:
				{
					const auto lex = substitute(p.lexical, env);
					const auto sur = substitute(p.surface, env);
					const auto& pairs = a.feasiblePairs();
					fsa::PairSet set(pairs.size(), false);
					for (std::size_t i = 0; i < pairs.size(); ++i)
					{
						set[i] = sideMatches(a, lex, pairs[i].lexical) && sideMatches(a, sur, pairs[i].surface);
					}
					return fsa::Pattern::atomOf(std::move(set));
				}
				case ContextPattern::Kind::Sequence:
				case ContextPattern::Kind::Alternation:
				{
					std::vector<fsa::Pattern> items;
					for (auto& item : p.items) items.push_back(lower(a, item, env));
					return p.kind == ContextPattern::Kind::Sequence
						? fsa::Pattern::sequence(std::move(items))
						: fsa::Pattern::alternation(std::move(items));
				}
				case ContextPattern::Kind::Star:
					return fsa::Pattern::star(lower(a, p.items.front(), env));
				}
				return fsa::Pattern::empty();
			}

			std::vector<Env> environments(const TwoLevelRule& rule)
			{
				std::vector<Env> envs{ Env{} };
				if (rule.where.empty()) return envs;
				if (rule.matched)
				{
					envs.clear();
					for (std::size_t i = 0; i < rule.where.front().values.size(); ++i)
					{
						Env env;
						for (auto& b : rule.where) env[b.variable] = b.values[i];
						envs.push_back(std::move(env));
					}
					return envs;
				}
				for (auto& b : rule.where)
				{
					std::vector<Env> next;
					for (auto& env : envs)
					{
						for (auto& v : b.values)
						{
							auto e = env;
							e[b.variable] = v;
							next.push_back(std::move(e));
						}
					}
					envs = std::move(next);
				}
				return envs;
			}
		}

		std::vector<RuleInstance> expandRule(const Alphabet& alphabet, const TwoLevelRule& rule)
		{
			std::vector<RuleInstance> out;
			for (auto& env : environments(rule))
			{
				const auto lex = text::decode(substitute(rule.lexical, env));
				const auto sur = text::decode(substitute(rule.surface, env));
				if (lex.size() != 1 || sur.size() != 1)
					throw Error("rule " + rule.name + ": rule pair must consist of single symbols, got " +
						text::encode(lex) + ":" + text::encode(sur));
				RuleInstance inst;
				inst.pair = { lex.front(), sur.front() };
				inst.pairId = alphabet.pairId(inst.pair);
				if (inst.pairId < 0)
					throw Error("rule " + rule.name + ": pair " + inst.pair.str() + " is not a feasible pair");
				inst.left = lower(alphabet, rule.left, env);
				inst.right = lower(alphabet, rule.right, env);
				out.push_back(std::move(inst));
			}
			return out;
		}
	}

	// ------------------------------------------------------------ compilation

	namespace
	{
		struct Context
		{
			fsa::Dfa left;  // .* L
			fsa::Dfa right; // R, matched once an accepting state is reached
		};

		struct Restriction
		{
			int pair;
			std::vector<int> contexts;
		};

		struct Coercion
		{
			Symbol lexical;
			int pair;
			int context;
		};

		struct Exclusion
		{
			int pair;
			int context;
		};

		struct CompiledClauses
		{
			std::vector<Context> contexts;
			std::vector<Restriction> restrictions;
			std::vector<Coercion> coercions;
			std::vector<Exclusion> exclusions;
		};

		CompiledClauses compileClauses(const Alphabet& alphabet, const TwoLevelRule& rule)
		{
			CompiledClauses out;
			const auto n = alphabet.feasiblePairs().size();
			for (auto& inst : detail::expandRule(alphabet, rule))
			{
				const int ctx = static_cast<int>(out.contexts.size());
				out.contexts.push_back({ fsa::compile(inst.left, n, true), fsa::compile(inst.right, n, false) });
				const bool restricts = rule.op == RuleOperator::ContextRestriction || rule.op == RuleOperator::Composite;
				const bool coerces = rule.op == RuleOperator::SurfaceCoercion || rule.op == RuleOperator::Composite;
				if (restricts)
				{
					auto it = std::find_if(out.restrictions.begin(), out.restrictions.end(),
						[&](const Restriction& r) { return r.pair == inst.pairId; });
					if (it == out.restrictions.end()) out.restrictions.push_back({ inst.pairId, { ctx } });
					else it->contexts.push_back(ctx);
				}
				if (coerces) out.coercions.push_back({ inst.pair.lexical, inst.pairId, ctx });
				if (rule.op == RuleOperator::Exclusion) out.exclusions.push_back({ inst.pairId, ctx });
			}
			return out;
		}

		/// Explicit DFA over pair ids that accepts exactly the alignments a
		/// rule admits. States track left-context automata plus pending
		/// right-context obligations.
		struct RuleMachine
		{
			std::vector<std::vector<std::int32_t>> next;
			std::vector<char> accepting;
		};

		using Obligation = std::vector<std::pair<int, int>>; // (context, right state)

		struct MachineState
		{
			std::vector<int> left;
			std::vector<Obligation> positive;
			std::vector<std::pair<int, int>> negative;

			std::vector<int> key() const
			{
				std::vector<int> k(left);
				k.push_back(-2);
				for (auto& ob : positive)
				{
					for (auto [c, s] : ob) { k.push_back(c); k.push_back(s); }
					k.push_back(-3);
				}
				k.push_back(-4);
				for (auto [c, s] : negative) { k.push_back(c); k.push_back(s); }
				return k;
			}

			void canonicalize()
			{
				for (auto& ob : positive)
				{
					std::sort(ob.begin(), ob.end());
					ob.erase(std::unique(ob.begin(), ob.end()), ob.end());
				}
				std::sort(positive.begin(), positive.end());
				positive.erase(std::unique(positive.begin(), positive.end()), positive.end());
				std::sort(negative.begin(), negative.end());
				negative.erase(std::unique(negative.begin(), negative.end()), negative.end());
			}
		};

		constexpr std::size_t kMaxRuleStates = 200000;

		std::optional<MachineState> transition(const CompiledClauses& cc, const std::vector<SymbolPair>& pairs,
			const MachineState& cur, int q)
		{
			MachineState out;
			std::vector<char> leftMatched(cc.contexts.size());
			for (std::size_t k = 0; k < cc.contexts.size(); ++k)
				leftMatched[k] = cc.contexts[k].left.accepts(cur.left[k]);

			for (auto& ob : cur.positive)
			{
				Obligation advanced;
				bool satisfied = false;
				for (auto [c, s] : ob)
				{
					const int s2 = cc.contexts[c].right.step(s, q);
					if (s2 < 0) continue;
					if (cc.contexts[c].right.accepts(s2)) { satisfied = true; break; }
					advanced.emplace_back(c, s2);
				}
				if (satisfied) continue;
				if (advanced.empty()) return std::nullopt;
				out.positive.push_back(std::move(advanced));
			}
			for (auto [c, s] : cur.negative)
			{
				const int s2 = cc.contexts[c].right.step(s, q);
				if (s2 < 0) continue;
				if (cc.contexts[c].right.accepts(s2)) return std::nullopt;
				out.negative.emplace_back(c, s2);
			}

			for (auto& r : cc.restrictions)
			{
				if (r.pair != q) continue;
				Obligation ob;
				bool satisfied = false;
				for (int c : r.contexts)
				{
					if (!leftMatched[c]) continue;
					const auto& right = cc.contexts[c].right;
					if (right.accepts(right.start)) { satisfied = true; break; }
					ob.emplace_back(c, right.start);
				}
				if (satisfied) continue;
				if (ob.empty()) return std::nullopt;
				out.positive.push_back(std::move(ob));
			}
			auto forbidIfRightFollows = [&](int c) -> bool
			{
				const auto& right = cc.contexts[c].right;
				if (right.accepts(right.start)) return false;
				out.negative.emplace_back(c, right.start);
				return true;
			};
			for (auto& co : cc.coercions)
			{
				if (pairs[q].lexical != co.lexical || q == co.pair || !leftMatched[co.context]) continue;
				if (!forbidIfRightFollows(co.context)) return std::nullopt;
			}
			for (auto& ex : cc.exclusions)
			{
				if (q != ex.pair || !leftMatched[ex.context]) continue;
				if (!forbidIfRightFollows(ex.context)) return std::nullopt;
			}

			out.left.resize(cc.contexts.size());
			for (std::size_t k = 0; k < cc.contexts.size(); ++k)
				out.left[k] = cc.contexts[k].left.step(cur.left[k], q);
			out.canonicalize();
			return out;
		}

		RuleMachine buildMachine(const Alphabet& alphabet, const TwoLevelRule& rule)
		{
			const auto cc = compileClauses(alphabet, rule);
			const auto& pairs = alphabet.feasiblePairs();
			RuleMachine m;
			std::map<std::vector<int>, int> ids;
			std::deque<MachineState> queue;

			MachineState init;
			for (auto& c : cc.contexts) init.left.push_back(c.left.start);
			ids.emplace(init.key(), 0);
			m.next.emplace_back(pairs.size(), -1);
			m.accepting.push_back(init.positive.empty());
			queue.push_back(init);

			while (!queue.empty())
			{
				auto cur = std::move(queue.front());
				queue.pop_front();
				const int from = ids.at(cur.key());
				for (std::size_t q = 0; q < pairs.size(); ++q)
				{
					auto nxt = transition(cc, pairs, cur, static_cast<int>(q));
					if (!nxt) continue;
					auto key = nxt->key();
					auto it = ids.find(key);
					if (it == ids.end())
					{
						if (ids.size() >= kMaxRuleStates) throw Error("rule " + rule.name + " compiles to too many states");
						const int id = static_cast<int>(m.next.size());
						it = ids.emplace(std::move(key), id).first;
						m.next.emplace_back(pairs.size(), -1);
						m.accepting.push_back(nxt->positive.empty());
						queue.push_back(std::move(*nxt));
					}
					m.next[from][q] = it->second;
				}
			}
			return m;
		}
	}

	struct PhonologyEngine::Impl
	{
		RuleSet rules;
		std::vector<RuleMachine> machines;

		std::vector<std::int32_t> startStates() const
		{
			return std::vector<std::int32_t>(machines.size(), 0);
		}

		bool step(const std::vector<std::int32_t>& from, int pair, std::vector<std::int32_t>& to) const
		{
			to.resize(machines.size());
			for (std::size_t r = 0; r < machines.size(); ++r)
			{
				const auto s = machines[r].next[from[r]][pair];
				if (s < 0) return false;
				to[r] = s;
			}
			return true;
		}

		bool accepting(const std::vector<std::int32_t>& states) const
		{
			for (std::size_t r = 0; r < machines.size(); ++r)
				if (!machines[r].accepting[states[r]]) return false;
			return true;
		}

		void checkSymbols(const LexicalString& lex) const
		{
			for (Symbol s : lex.symbols())
			{
				if (!rules.alphabet.isDeclared(s))
					throw Error("undeclared symbol '" + text::encode(s) + "' in " + lex.str());
			}
		}
	};

	PhonologyEngine::PhonologyEngine(RuleSet rules)
		: impl_(std::make_unique<Impl>())
	{
		impl_->rules = std::move(rules);
		for (auto& rule : impl_->rules.rules)
			impl_->machines.push_back(buildMachine(impl_->rules.alphabet, rule));
	}

	PhonologyEngine::~PhonologyEngine() = default;
	PhonologyEngine::PhonologyEngine(PhonologyEngine&&) noexcept = default;
	PhonologyEngine& PhonologyEngine::operator=(PhonologyEngine&&) noexcept = default;

	const Alphabet& PhonologyEngine::alphabet() const { return impl_->rules.alphabet; }
	const std::vector<TwoLevelRule>& PhonologyEngine::rules() const { return impl_->rules.rules; }
	std::size_t PhonologyEngine::stateCount(std::size_t rule) const { return impl_->machines.at(rule).next.size(); }

	std::set<std::u32string> PhonologyEngine::generate(const LexicalString& lexical) const
	{
		impl_->checkSymbols(lexical);
		const auto& pairs = alphabet().feasiblePairs();
		std::map<std::vector<std::int32_t>, std::set<std::u32string>> layer;
		layer[impl_->startStates()].insert(U"");
		std::vector<std::int32_t> to;
		for (Symbol sym : lexical.symbols())
		{
			std::map<std::vector<std::int32_t>, std::set<std::u32string>> next;
			for (auto& [states, surfaces] : layer)
			{
				for (int pid : alphabet().pairsFor(sym))
				{
					if (!impl_->step(states, pid, to)) continue;
					auto& bucket = next[to];
					const Symbol out = pairs[pid].surface;
					for (auto& s : surfaces) bucket.insert(out == kNullSymbol ? s : s + out);
				}
			}
			layer = std::move(next);
			if (layer.empty()) break;
		}
		std::set<std::u32string> result;
		for (auto& [states, surfaces] : layer)
		{
			if (impl_->accepting(states)) result.insert(surfaces.begin(), surfaces.end());
		}
		return result;
	}

	std::vector<Alignment> PhonologyEngine::alignments(const LexicalString& lexical) const
	{
		impl_->checkSymbols(lexical);
		const auto& pairs = alphabet().feasiblePairs();
		const auto& syms = lexical.symbols();
		std::vector<Alignment> out;
		Alignment current;
		auto dfs = [&](auto&& self, std::size_t i, const std::vector<std::int32_t>& states) -> void
		{
			if (i == syms.size())
			{
				if (impl_->accepting(states)) out.push_back(current);
				return;
			}
			std::vector<std::int32_t> to;
			for (int pid : alphabet().pairsFor(syms[i]))
			{
				if (!impl_->step(states, pid, to)) continue;
				current.push_back(pairs[pid]);
				self(self, i + 1, to);
				current.pop_back();
			}
		};
		dfs(dfs, 0, impl_->startStates());
		return out;
	}

	PhonologyEngine::Frontier PhonologyEngine::start() const
	{
		return { Configuration{ 0, impl_->startStates() } };
	}

	PhonologyEngine::Frontier PhonologyEngine::advance(const Frontier& frontier, std::u32string_view lexical,
		std::u32string_view surface) const
	{
		const auto& pairs = alphabet().feasiblePairs();
		Frontier cur = frontier;
		for (Symbol sym : lexical)
		{
			std::set<Configuration> next;
			Configuration to;
			for (auto& conf : cur)
			{
				for (int pid : alphabet().pairsFor(sym))
				{
					const Symbol out = pairs[pid].surface;
					std::uint32_t pos = conf.surface;
					if (out != kNullSymbol)
					{
						if (pos >= surface.size() || surface[pos] != out) continue;
						++pos;
					}
					if (!impl_->step(conf.states, pid, to.states)) continue;
					to.surface = pos;
					next.insert(to);
				}
			}
			cur.assign(next.begin(), next.end());
			if (cur.empty()) break;
		}
		return cur;
	}

	bool PhonologyEngine::accepts(const Frontier& frontier, std::size_t surfaceLength) const
	{
		for (auto& conf : frontier)
		{
			if (conf.surface == surfaceLength && impl_->accepting(conf.states)) return true;
		}
		return false;
	}

	bool PhonologyEngine::recognize(std::u32string_view surface, const LexicalString& lexical) const
	{
		impl_->checkSymbols(lexical);
		return accepts(advance(start(), lexical.symbols(), surface), surface.size());
	}

	// ------------------------------------------------------- conflict check

	namespace
	{
		bool leftOverlap(const fsa::Dfa& a, const fsa::Dfa& b, std::size_t alphabetSize, std::size_t window)
		{
			std::set<std::pair<int, int>> layer{ { a.start, b.start } };
			for (std::size_t depth = 0;; ++depth)
			{
				for (auto [x, y] : layer)
					if (a.accepts(x) && b.accepts(y)) return true;
				if (depth == window) return false;
				std::set<std::pair<int, int>> next;
				for (auto [x, y] : layer)
				{
					for (std::size_t q = 0; q < alphabetSize; ++q)
					{
						const int x2 = a.step(x, static_cast<int>(q));
						const int y2 = b.step(y, static_cast<int>(q));
						if (x2 >= 0 && y2 >= 0) next.insert({ x2, y2 });
					}
				}
				layer = std::move(next);
			}
		}

		bool rightOverlap(const fsa::Dfa& a, const fsa::Dfa& b, std::size_t alphabetSize, std::size_t window)
		{
			// -1 encodes "already matched": the remainder is unconstrained.
			auto norm = [](const fsa::Dfa& d, int s) { return d.accepts(s) ? -1 : s; };
			std::set<std::pair<int, int>> layer{ { norm(a, a.start), norm(b, b.start) } };
			for (std::size_t depth = 0;; ++depth)
			{
				for (auto [x, y] : layer)
					if (x == -1 && y == -1) return true;
				if (depth == window) return false;
				std::set<std::pair<int, int>> next;
				for (auto [x, y] : layer)
				{
					for (std::size_t q = 0; q < alphabetSize; ++q)
					{
						int x2 = x == -1 ? -1 : a.step(x, static_cast<int>(q));
						int y2 = y == -1 ? -1 : b.step(y, static_cast<int>(q));
						if ((x != -1 && x2 < 0) || (y != -1 && y2 < 0)) continue;
						if (x != -1) x2 = norm(a, x2);
						if (y != -1) y2 = norm(b, y2);
						next.insert({ x2, y2 });
					}
				}
				layer = std::move(next);
			}
		}
	}

	std::vector<RuleDiagnostic> checkRuleConflicts(const RuleSet& rules, std::size_t window)
	{
		const auto& alphabet = rules.alphabet;
		const auto n = alphabet.feasiblePairs().size();
		std::vector<CompiledClauses> compiled;
		for (auto& r : rules.rules) compiled.push_back(compileClauses(alphabet, r));

		std::vector<RuleDiagnostic> out;
		for (std::size_t i = 0; i < compiled.size(); ++i)
		{
			for (std::size_t j = i + 1; j < compiled.size(); ++j)
			{
				for (auto& a : compiled[i].coercions)
				{
					for (auto& b : compiled[j].coercions)
					{
						if (a.lexical != b.lexical || a.pair == b.pair) continue;
						const auto& ca = compiled[i].contexts[a.context];
						const auto& cb = compiled[j].contexts[b.context];
						if (!leftOverlap(ca.left, cb.left, n, window)) continue;
						if (!rightOverlap(ca.right, cb.right, n, window)) continue;
						RuleDiagnostic d;
						d.firstRule = rules.rules[i].name;
						d.secondRule = rules.rules[j].name;
						d.firstPair = alphabet.feasiblePairs()[a.pair];
						d.secondPair = alphabet.feasiblePairs()[b.pair];
						d.message = "coercion conflict: " + d.firstRule + " requires " + d.firstPair.str() + " but " +
							d.secondRule + " requires " + d.secondPair.str() + " in an overlapping context";
						out.push_back(std::move(d));
					}
				}
			}
		}
		return out;
	}
}

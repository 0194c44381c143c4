#include <morfwork/disambiguator.hpp>
#include <morfwork/error.hpp>
#include <morfwork/text.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstring>
#include <set>
#include <thread>

namespace morfwork
{
	std::string SlotTest::str() const
	{
		const std::string neg = negated ? "!" : "";
		switch (kind)
		{
		case Kind::Feature: return std::string(name(dimension)) + neg + "=" + value;
		case Kind::Suffix: return "suffix" + neg + "~" + value;
		case Kind::Root: return "root" + neg + "=" + value;
		case Kind::Word: return "word" + neg + "=\"" + value + "\"";
		}
		return {};
	}

	std::string SlotPattern::str() const
	{
		std::string s;
		for (auto& t : tests) s += (s.empty() ? "" : " ") + t.str();
		return s;
	}

	std::string Constraint::str() const
	{
		std::string s = "CONSTRAINT " + name + " PRIORITY " + std::to_string(priority) +
			(action == Action::Select ? " SELECT" : " DISCARD");
		for (std::size_t i = 0; i < window.size(); ++i)
			s += " [" + std::string(i == target ? "TARGET: " : "") + window[i].str() + "]";
		return s + " ;";
	}

	namespace
	{
		struct Lexer
		{
			std::string_view src;
			std::string source;
			std::size_t pos = 0, line = 1, col = 1;

			[[noreturn]] void fail(const std::string& msg) const { throw ParseError(source, line, col, msg); }

			void skip()
			{
				while (pos < src.size())
				{
					const char c = src[pos];
					if (c == '#')
					{
						while (pos < src.size() && src[pos] != '\n') bump();
					}
					else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') bump();
					else break;
				}
			}
			void bump()
			{
				if (src[pos] == '\n')
				{
					++line;
					col = 1;
				}
				else if ((static_cast<unsigned char>(src[pos]) & 0xC0) != 0x80) ++col;
				++pos;
			}
			bool atEnd()
			{
				skip();
				return pos >= src.size();
			}
			bool peek(char c)
			{
				skip();
				return pos < src.size() && src[pos] == c;
			}
			void expect(char c)
			{
				if (!peek(c)) fail(std::string("expected '") + c + "'");
				bump();
			}
			// A bare word: anything up to whitespace or one of [ ] ; or a quote.
			std::string word()
			{
				skip();
				const auto b = pos;
				while (pos < src.size() && !std::strchr(" \t\r\n[];\"#", src[pos])) bump();
				if (b == pos) fail(pos < src.size() ? std::string("unexpected '") + src[pos] + "'" : "unexpected end of input");
				return std::string(src.substr(b, pos - b));
			}
			std::string quoted()
			{
				expect('"');
				const auto b = pos;
				while (pos < src.size() && src[pos] != '"' && src[pos] != '\n') bump();
				if (pos >= src.size() || src[pos] != '"') fail("unterminated string");
				auto s = std::string(src.substr(b, pos - b));
				bump();
				return s;
			}
		};

		SlotTest parseTest(Lexer& lx, std::string tok)
		{
			SlotTest t;
			auto splitOp = [&](std::string_view op) -> std::optional<std::pair<std::string, std::string>>
			{
				auto at = tok.find(op);
				if (at == std::string::npos) return std::nullopt;
				return std::make_pair(tok.substr(0, at), tok.substr(at + op.size()));
			};
			if (auto p = splitOp("!~"); p && p->first == "suffix")
			{
				t.kind = SlotTest::Kind::Suffix;
				t.negated = true;
				t.value = p->second;
			}
			else if (auto p2 = splitOp("~"); p2 && p2->first == "suffix")
			{
				t.kind = SlotTest::Kind::Suffix;
				t.value = p2->second;
			}
			else
			{
				auto p3 = splitOp("!=");
				if (p3) t.negated = true;
				else p3 = splitOp("=");
				if (!p3) lx.fail("expected a test such as case=genitive, suffix~GEN or word=\"senin\"");
				auto [key, value] = *p3;
				if (key == "word")
				{
					t.kind = SlotTest::Kind::Word;
					if (!value.empty()) lx.fail("word test needs a quoted string");
					t.value = text::lower(std::string_view(lx.quoted()));
				}
				else if (key == "root")
				{
					t.kind = SlotTest::Kind::Root;
					t.value = value;
				}
				else if (auto d = parseDimension(key))
				{
					t.kind = SlotTest::Kind::Feature;
					t.dimension = *d;
					t.value = value;
				}
				else
				{
					lx.fail("unknown feature '" + key + "'");
				}
				if (t.kind != SlotTest::Kind::Word && t.value.empty()) lx.fail("missing value for '" + key + "'");
			}
			if (t.kind == SlotTest::Kind::Suffix && t.value.empty()) lx.fail("missing suffix name");
			return t;
		}

		bool testMatches(const SlotTest& t, const std::string& word, const Parse* p)
		{
			bool hit = false;
			switch (t.kind)
			{
			case SlotTest::Kind::Word: hit = word == t.value; break;
			case SlotTest::Kind::Root: hit = p && p->root.root == t.value; break;
			case SlotTest::Kind::Suffix: hit = p && p->features.hasSuffix(t.value); break;
			case SlotTest::Kind::Feature:
				if (!p) hit = false;
				else if (t.value == "*") hit = p->features[t.dimension].has_value();
				else hit = p->features.has(t.dimension, t.value);
				break;
			}
			// A negated feature test still requires an analysis to look at.
			if (t.negated) return t.kind == SlotTest::Kind::Word ? !hit : (p != nullptr && !hit);
			return hit;
		}

		bool patternMatches(const SlotPattern& pat, const std::string& word, const Parse* p)
		{
			for (auto& t : pat.tests)
				if (!testMatches(t, word, p)) return false;
			return true;
		}

		struct Work
		{
			std::string lowered;
			std::vector<std::size_t> remaining; // indices into candidates
		};
	}

	std::vector<Constraint> parseConstraints(std::string_view text, const std::string& sourceName)
	{
		Lexer lx{ text, sourceName };
		std::vector<Constraint> out;
		std::set<int> priorities;
		std::set<std::string> names;
		while (!lx.atEnd())
		{
			const auto startLine = lx.line;
			if (lx.word() != "CONSTRAINT") lx.fail("expected CONSTRAINT");
			Constraint c;
			c.line = startLine;
			c.name = lx.word();
			if (!names.insert(c.name).second) lx.fail("duplicate constraint name " + c.name);
			if (lx.word() != "PRIORITY") lx.fail("expected PRIORITY");
			const auto pr = lx.word();
			try
			{
				std::size_t used = 0;
				c.priority = std::stoi(pr, &used);
				if (used != pr.size()) throw std::invalid_argument(pr);
			}
			catch (const std::exception&)
			{
				lx.fail("priority must be an integer");
			}
			if (!priorities.insert(c.priority).second) lx.fail("duplicate priority " + pr);
			const auto action = lx.word();
			if (action == "SELECT") c.action = Constraint::Action::Select;
			else if (action == "DISCARD") c.action = Constraint::Action::Discard;
			else lx.fail("expected SELECT or DISCARD");

			bool haveTarget = false;
			while (lx.peek('['))
			{
				lx.expect('[');
				SlotPattern pat;
				bool isTarget = false;
				while (!lx.peek(']'))
				{
					if (lx.atEnd()) lx.fail("unterminated slot pattern");
					auto tok = lx.word();
					if (tok == "TARGET:")
					{
						if (isTarget || haveTarget) lx.fail("more than one TARGET slot");
						if (!pat.tests.empty()) lx.fail("TARGET: must open the slot");
						isTarget = haveTarget = true;
						continue;
					}
					pat.tests.push_back(parseTest(lx, tok));
				}
				lx.expect(']');
				if (isTarget) c.target = c.window.size();
				c.window.push_back(std::move(pat));
			}
			lx.expect(';');
			if (!haveTarget) lx.fail("constraint " + c.name + " has no TARGET slot");
			if (c.window.empty() || c.window.size() > 3) lx.fail("window must have 1 to 3 slots");
			out.push_back(std::move(c));
		}
		std::stable_sort(out.begin(), out.end(), [](const Constraint& a, const Constraint& b) { return a.priority > b.priority; });
		return out;
	}

	std::vector<Constraint> loadConstraints(const std::filesystem::path& path)
	{
		return parseConstraints(readFile(path), path.string());
	}

	RootStats RootStats::parse(std::string_view tsv, const std::string& sourceName)
	{
		RootStats st;
		std::size_t lineNo = 0;
		for (auto line : text::split(tsv, '\n'))
		{
			++lineNo;
			line = text::trim(line);
			if (line.empty() || line.front() == '#') continue;
			auto cols = text::split(line, '\t');
			if (cols.size() != 2) throw ParseError(sourceName, lineNo, 1, "expected root<TAB>count");
			const std::string c(text::trim(cols[1]));
			if (c.empty() || c.find_first_not_of("0123456789") != std::string::npos)
				throw ParseError(sourceName, lineNo, cols[0].size() + 2, "count must be a nonnegative integer");
			st.add(std::string(text::trim(cols[0])), std::stoull(c));
		}
		return st;
	}

	RootStats RootStats::load(const std::filesystem::path& path)
	{
		return parse(readFile(path), path.string());
	}

	void RootStats::add(const std::string& root, std::uint64_t count) { counts_[root] += count; }

	std::uint64_t RootStats::count(const std::string& root) const
	{
		auto it = counts_.find(root);
		return it == counts_.end() ? 0 : it->second;
	}

	std::string_view name(Resolution r)
	{
		switch (r)
		{
		case Resolution::Unambiguous: return "unambiguous";
		case Resolution::Constraint: return "constraint";
		case Resolution::Statistics: return "statistics";
		case Resolution::Interactive: return "interactive";
		case Resolution::Unresolved: return "unresolved";
		case Resolution::Punctuation: return "punctuation";
		case Resolution::Unknown: return "unknown";
		}
		return "?";
	}

	std::string TokenAnalysis::resolutionText() const
	{
		if (resolvedBy == Resolution::Constraint) return "constraint:" + constraint;
		return std::string(name(resolvedBy));
	}

	std::size_t TagReport::analyzedTokens() const
	{
		std::size_t n = 0;
		for (auto& [r, c] : counts)
			if (r != Resolution::Punctuation && r != Resolution::Unknown) n += c;
		return n;
	}

	double TagReport::unresolvedRate() const
	{
		const auto n = analyzedTokens();
		if (n == 0) return 0.0;
		auto it = counts.find(Resolution::Unresolved);
		return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n);
	}

	std::string TagReport::str() const
	{
		std::string s = "sentences: " + std::to_string(sentences) + "\ntokens: " + std::to_string(tokens) + "\n";
		for (auto r : { Resolution::Unambiguous, Resolution::Constraint, Resolution::Statistics, Resolution::Interactive,
				 Resolution::Unresolved, Resolution::Punctuation, Resolution::Unknown })
		{
			auto it = counts.find(r);
			s += std::string(name(r)) + ": " + std::to_string(it == counts.end() ? 0 : it->second) + "\n";
		}
		for (auto& [c, n] : constraintFirings) s += "  constraint " + c + ": " + std::to_string(n) + "\n";
		char buf[64];
		std::snprintf(buf, sizeof buf, "unresolved rate: %.2f%%\n", unresolvedRate() * 100.0);
		return s + buf;
	}

	Disambiguator::Disambiguator(const Analyzer& analyzer, std::vector<Constraint> constraints, RootStats stats)
		: analyzer_(analyzer), constraints_(std::move(constraints)), stats_(std::move(stats))
	{
		std::stable_sort(constraints_.begin(), constraints_.end(),
			[](const Constraint& a, const Constraint& b) { return a.priority > b.priority; });
	}

	std::vector<TokenAnalysis> Disambiguator::tagSentence(const std::vector<std::string>& tokens,
		const InteractiveCallback& interactive) const
	{
		const std::size_t n = tokens.size();
		std::vector<TokenAnalysis> out(n);
		std::vector<Work> work(n);
		for (std::size_t i = 0; i < n; ++i)
		{
			out[i].token = tokens[i];
			work[i].lowered = text::lower(std::string_view(tokens[i]));
			if (isPunctuation(tokens[i]))
			{
				out[i].resolvedBy = Resolution::Punctuation;
				continue;
			}
			try
			{
				out[i].candidates = analyzer_.analyze(tokens[i]);
			}
			catch (const UnknownWord&)
			{
				out[i].resolvedBy = Resolution::Unknown;
				continue;
			}
			for (std::size_t k = 0; k < out[i].candidates.size(); ++k) work[i].remaining.push_back(k);
			if (out[i].candidates.size() == 1)
			{
				out[i].chosen = 0;
				out[i].resolvedBy = Resolution::Unambiguous;
			}
		}

		// Neighbours are judged by their chosen parse when they have one,
		// otherwise by any remaining candidate.
		auto neighbourMatches = [&](const SlotPattern& pat, std::size_t j)
		{
			if (out[j].chosen) return patternMatches(pat, work[j].lowered, &out[j].candidates[*out[j].chosen]);
			if (work[j].remaining.empty()) return patternMatches(pat, work[j].lowered, nullptr);
			for (auto k : work[j].remaining)
				if (patternMatches(pat, work[j].lowered, &out[j].candidates[k])) return true;
			return false;
		};

		// Constraints, repeated until nothing changes: a resolution can enable
		// a neighbour's context.
		for (bool changed = true; changed;)
		{
			changed = false;
			for (auto& c : constraints_)
			{
				for (std::size_t i = 0; i < n; ++i)
				{
					if (out[i].chosen || work[i].remaining.size() < 2) continue;
					const auto first = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(c.target);
					if (first < 0 || static_cast<std::size_t>(first) + c.window.size() > n) continue;
					bool context = true;
					for (std::size_t w = 0; w < c.window.size() && context; ++w)
						if (w != c.target) context = neighbourMatches(c.window[w], static_cast<std::size_t>(first) + w);
					if (!context) continue;

					std::vector<std::size_t> kept;
					for (auto k : work[i].remaining)
					{
						const bool m = patternMatches(c.window[c.target], work[i].lowered, &out[i].candidates[k]);
						if (m == (c.action == Constraint::Action::Select)) kept.push_back(k);
					}
					if (kept.empty() || kept.size() == work[i].remaining.size()) continue;
					work[i].remaining = std::move(kept);
					changed = true;
					if (work[i].remaining.size() == 1)
					{
						out[i].chosen = work[i].remaining.front();
						out[i].resolvedBy = Resolution::Constraint;
						out[i].constraint = c.name;
					}
				}
			}
		}

		for (std::size_t i = 0; i < n; ++i)
		{
			if (out[i].chosen || work[i].remaining.size() < 2) continue;
			// Root-frequency statistics: keep the most frequent root; ties go to
			// the root met first in parse order. Zero counts carry no evidence.
			std::string best;
			std::uint64_t bestCount = 0;
			for (auto k : work[i].remaining)
			{
				const auto& r = out[i].candidates[k].root.root;
				const auto cnt = stats_.count(r);
				if (cnt > bestCount)
				{
					best = r;
					bestCount = cnt;
				}
			}
			if (bestCount > 0)
			{
				std::vector<std::size_t> kept;
				for (auto k : work[i].remaining)
					if (out[i].candidates[k].root.root == best) kept.push_back(k);
				work[i].remaining = std::move(kept);
				if (work[i].remaining.size() == 1)
				{
					out[i].chosen = work[i].remaining.front();
					out[i].resolvedBy = Resolution::Statistics;
					continue;
				}
			}
			if (interactive)
			{
				std::vector<const Parse*> options;
				for (auto k : work[i].remaining) options.push_back(&out[i].candidates[k]);
				const auto pick = interactive(tokens, i, options);
				if (pick >= options.size()) throw OutOfRange("interactive choice out of range");
				out[i].chosen = work[i].remaining[pick];
				out[i].resolvedBy = Resolution::Interactive;
			}
			else
			{
				out[i].chosen = work[i].remaining.front();
				out[i].resolvedBy = Resolution::Unresolved;
			}
		}
		return out;
	}

	TaggedCorpus Disambiguator::tagCorpus(const std::vector<Sentence>& sentences, TagReport* report,
		const TagOptions& options) const
	{
		std::vector<std::vector<TokenAnalysis>> results(sentences.size());
		auto tagOne = [&](std::size_t s)
		{
			std::vector<std::string> toks;
			for (auto& t : sentences[s].tokens) toks.push_back(t.text);
			results[s] = tagSentence(toks, options.interactive);
		};

		if (options.interactive || sentences.size() < 64)
		{
			for (std::size_t s = 0; s < sentences.size(); ++s) tagOne(s);
		}
		else
		{
			unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
			threads = std::min<unsigned>(threads, 16);
			std::atomic<std::size_t> nextIdx{ 0 };
			std::vector<std::exception_ptr> errors(threads);
			std::vector<std::thread> pool;
			for (unsigned t = 0; t < threads; ++t)
			{
				pool.emplace_back([&, t]
				{
					try
					{
						for (std::size_t s; (s = nextIdx++) < sentences.size();) tagOne(s);
					}
					catch (...)
					{
						errors[t] = std::current_exception();
					}
				});
			}
			for (auto& th : pool) th.join();
			for (auto& e : errors)
				if (e) std::rethrow_exception(e);
		}

		TaggedCorpus corpus;
		TagReport local;
		local.sentences = sentences.size();
		std::string unresolvedList;
		for (std::size_t s = 0; s < sentences.size(); ++s)
		{
			TaggedSentence ts;
			ts.sentence = sentences[s];
			for (std::size_t t = 0; t < results[s].size(); ++t)
			{
				const auto& ta = results[s][t];
				++local.tokens;
				++local.counts[ta.resolvedBy];
				if (ta.resolvedBy == Resolution::Constraint) ++local.constraintFirings[ta.constraint];
				if (ta.resolvedBy == Resolution::Unresolved)
					unresolvedList += "  sentence " + std::to_string(s) + " token " + std::to_string(t) + " '" + ta.token + "'\n";
				if (const Parse* p = ta.chosenParse()) ts.readings.push_back(p->features);
				else ts.readings.emplace_back();
			}
			corpus.sentences.push_back(std::move(ts));
		}
		if (options.strict && !unresolvedList.empty()) throw UnresolvedTokens("unresolved tokens:\n" + unresolvedList);
		if (report) *report = std::move(local);
		return corpus;
	}
}

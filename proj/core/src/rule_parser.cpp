#include <morfwork/phonology.hpp>
#include <morfwork/error.hpp>
#include <morfwork/text.hpp>

#include "rules_internal.hpp"

#include <algorithm>
#include <optional>
#include <fstream>
#include <sstream>

namespace morfwork
{
	namespace
	{
		struct Token
		{
			std::string text;
			std::size_t line;
			std::size_t column;
		};

		bool isSpecial(char c)
		{
			return c == '(' || c == ')' || c == '|' || c == '*' || c == ';';
		}

		std::vector<Token> tokenize(std::string_view src)
		{
			std::vector<Token> out;
			std::size_t line = 1, col = 1;
			std::size_t i = 0;
			auto advance = [&](std::size_t n)
			{
				for (std::size_t k = 0; k < n; ++k)
				{
					if (src[i] == '\n') { ++line; col = 1; }
					else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) ++col;
					++i;
				}
			};
			while (i < src.size())
			{
				const char c = src[i];
				if (c == '#')
				{
					while (i < src.size() && src[i] != '\n') advance(1);
					continue;
				}
				if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
				{
					advance(1);
					continue;
				}
				if (isSpecial(c))
				{
					out.push_back({ std::string(1, c), line, col });
					advance(1);
					continue;
				}
				const std::size_t startLine = line, startCol = col, begin = i;
				while (i < src.size())
				{
					const char d = src[i];
					if (d == ' ' || d == '\t' || d == '\r' || d == '\n' || d == '#' || isSpecial(d)) break;
					advance(1);
				}
				out.push_back({ std::string(src.substr(begin, i - begin)), startLine, startCol });
			}
			return out;
		}

		std::optional<Symbol> singleSymbol(std::string_view token)
		{
			auto u = text::decode(token);
			if (u.size() != 1) return std::nullopt;
			return u.front();
		}

		class Parser
		{
		public:
			Parser(std::vector<Token> tokens, std::string source)
				: tokens_(std::move(tokens)), source_(std::move(source))
			{
			}

			RuleSet parse()
			{
				RuleSet result;
				if (tokens_.empty() || tokens_.front().text != "ALPHABET")
				{
					if (tokens_.empty()) throw ParseError(source_, 1, 1, "no alphabet declared");
					fail(tokens_.front(), "no alphabet declared");
				}
				++pos_;
				parseAlphabet(result.alphabet);
				result.alphabet.finalize();
				alphabet_ = &result.alphabet;

				while (pos_ < tokens_.size())
				{
					auto rule = parseRule(result.rules.size() + 1);
					for (auto& r : result.rules)
					{
						if (r.name == rule.name) fail(ruleStart_, "duplicate rule name '" + rule.name + "'");
					}
					result.rules.push_back(std::move(rule));
				}
				return result;
			}

		private:
			[[noreturn]] void fail(const Token& at, const std::string& message) const
			{
				throw ParseError(source_, at.line, at.column, message);
			}

			[[noreturn]] void failEnd(const std::string& message) const
			{
				const auto& last = tokens_.back();
				throw ParseError(source_, last.line, last.column + last.text.size(), message);
			}

			const Token& peek() const
			{
				if (pos_ >= tokens_.size()) failEnd("unexpected end of input");
				return tokens_[pos_];
			}

			const Token& take()
			{
				const Token& t = peek();
				++pos_;
				return t;
			}

			std::vector<Token> restOfLine(std::size_t line)
			{
				std::vector<Token> out;
				while (pos_ < tokens_.size() && tokens_[pos_].line == line) out.push_back(tokens_[pos_++]);
				return out;
			}

			Symbol declaredSymbol(const Alphabet& a, const Token& t) const
			{
				auto s = singleSymbol(t.text);
				if (!s || !a.isDeclared(*s)) fail(t, "undeclared symbol '" + t.text + "'");
				return *s;
			}

			void parseAlphabet(Alphabet& a)
			{
				bool closed = false;
				while (pos_ < tokens_.size())
				{
					const Token head = take();
					if (head.text == "END")
					{
						closed = true;
						break;
					}
					auto rest = restOfLine(head.line);
					if (head.text == "SYMBOLS")
					{
						for (auto& t : rest)
						{
							auto s = singleSymbol(t.text);
							if (!s) fail(t, "symbol must be a single character: '" + t.text + "'");
							if (*s == kNullSymbol || *s == kBoundarySymbol) fail(t, "'0' and '+' are reserved");
							a.addSymbol(*s);
						}
					}
					else if (head.text == "PAIRS")
					{
						for (auto& t : rest)
						{
							const auto colon = t.text.find(':');
							if (colon == std::string::npos) fail(t, "expected lexical:surface pair, got '" + t.text + "'");
							const Token lt{ t.text.substr(0, colon), t.line, t.column };
							const Token st{ t.text.substr(colon + 1), t.line, t.column + colon + 1 };
							auto lex = singleSymbol(lt.text);
							auto sur = singleSymbol(st.text);
							if (!lex || !sur) fail(t, "malformed pair '" + t.text + "'");
							if (*lex == kNullSymbol) fail(t, "pairs with a null lexical side are not supported");
							if (*lex != kBoundarySymbol) declaredSymbol(a, lt);
							if (*sur != kNullSymbol)
							{
								if (a.isMeta(*sur) || !a.symbols().count(*sur)) fail(st, "surface side must be a surface symbol or 0");
							}
							if (*lex == kBoundarySymbol && *sur != kNullSymbol) fail(t, "boundary '+' must pair with surface '0'");
							a.addPair({ *lex, *sur });
						}
					}
					else
					{
						if (rest.empty() || rest.front().text != "=") fail(head, "expected SYMBOLS, PAIRS, END or 'Name = members'");
						std::vector<Symbol> members;
						for (std::size_t k = 1; k < rest.size(); ++k) members.push_back(declaredSymbol(a, rest[k]));
						if (members.empty()) fail(head, "empty definition of '" + head.text + "'");
						auto single = singleSymbol(head.text);
						if (single)
						{
							if (a.isDeclared(*single)) fail(head, "meta-phoneme '" + head.text + "' clashes with a declared symbol");
							for (std::size_t k = 1; k < rest.size(); ++k)
							{
								if (a.isMeta(members[k - 1]) || !a.symbols().count(members[k - 1]))
									fail(rest[k], "meta-phoneme resolutions must be surface symbols");
							}
							a.addMeta(*single, members);
						}
						else
						{
							if (a.hasClass(head.text)) fail(head, "duplicate class '" + head.text + "'");
							a.addClass(head.text, std::set<Symbol>(members.begin(), members.end()));
						}
					}
				}
				if (!closed) failEnd("ALPHABET block is not closed with END");

				// Meta-phonemes resolve either entirely to vowels or not at all.
				auto vowels = a.classes().find("Vowel");
				if (vowels != a.classes().end())
				{
					for (auto& [meta, res] : a.metaPhonemes())
					{
						const auto inVowel = std::count_if(res.begin(), res.end(), [&](Symbol s) { return vowels->second.count(s) != 0; });
						if (inVowel != 0 && inVowel != static_cast<long>(res.size()))
							throw ParseError(source_, 0, 0, "meta-phoneme " + text::encode(meta) + " mixes vowel and non-vowel resolutions");
					}
				}
			}

			void checkSide(const std::string& side, const Token& at, const std::vector<VariableBinding>& vars, bool lexicalSide) const
			{
				if (side.empty() || side == "?") return;
				for (auto& v : vars)
					if (v.variable == side) return;
				if (alphabet_->hasClass(side)) return;
				auto s = singleSymbol(side);
				if (s)
				{
					if (*s == kNullSymbol)
					{
						if (lexicalSide) fail(at, "null '0' is not allowed on the lexical side of a context");
						return;
					}
					if (alphabet_->isDeclared(*s)) return;
				}
				fail(at, "undeclared symbol or class '" + side + "'");
			}

			struct AtomRef
			{
				Token token;
				std::string lexical;
				std::string surface;
			};

			ContextPattern parseAtom(const Token& t, std::vector<AtomRef>& refs)
			{
				ContextPattern p;
				p.kind = ContextPattern::Kind::Atom;
				const auto colon = t.text.find(':');
				if (colon == std::string::npos)
				{
					p.lexical = t.text == "?" ? "" : t.text;
				}
				else
				{
					p.lexical = t.text.substr(0, colon);
					p.surface = t.text.substr(colon + 1);
					if (p.surface.find(':') != std::string::npos) fail(t, "malformed pair '" + t.text + "'");
				}
				if (p.lexical == "?") p.lexical.clear();
				if (p.surface == "?") p.surface.clear();
				refs.push_back({ t, p.lexical, p.surface });
				return p;
			}

			static bool isStop(const std::string& s)
			{
				return s == "_" || s == ";" || s == "where" || s == ")" || s == "|";
			}

			ContextPattern parseAlternation(std::vector<AtomRef>& refs)
			{
				std::vector<ContextPattern> alts;
				alts.push_back(parseSequence(refs));
				while (pos_ < tokens_.size() && peek().text == "|")
				{
					++pos_;
					alts.push_back(parseSequence(refs));
				}
				if (alts.size() == 1) return std::move(alts.front());
				ContextPattern p;
				p.kind = ContextPattern::Kind::Alternation;
				p.items = std::move(alts);
				return p;
			}

			ContextPattern parseSequence(std::vector<AtomRef>& refs)
			{
				std::vector<ContextPattern> items;
				while (pos_ < tokens_.size() && !isStop(peek().text))
				{
					const Token& t = take();
					ContextPattern item;
					if (t.text == "(")
					{
						item = parseAlternation(refs);
						const Token& close = take();
						if (close.text != ")") fail(close, "expected ')'");
					}
					else if (t.text == "*")
					{
						fail(t, "'*' must follow an element");
					}
					else
					{
						item = parseAtom(t, refs);
					}
					while (pos_ < tokens_.size() && peek().text == "*")
					{
						++pos_;
						ContextPattern star;
						star.kind = ContextPattern::Kind::Star;
						star.items.push_back(std::move(item));
						item = std::move(star);
					}
					items.push_back(std::move(item));
				}
				if (items.empty()) return {};
				if (items.size() == 1) return std::move(items.front());
				ContextPattern p;
				p.kind = ContextPattern::Kind::Sequence;
				p.items = std::move(items);
				return p;
			}

			TwoLevelRule parseRule(std::size_t ordinal)
			{
				TwoLevelRule rule;
				ruleStart_ = peek();
				rule.line = ruleStart_.line;
				Token pairToken = take();
				if (pairToken.text.size() > 1 && pairToken.text.back() == ':')
				{
					rule.name = pairToken.text.substr(0, pairToken.text.size() - 1);
					pairToken = take();
				}
				else
				{
					rule.name = "rule" + std::to_string(ordinal);
				}
				const auto colon = pairToken.text.find(':');
				if (colon == std::string::npos || colon == 0 || colon + 1 == pairToken.text.size())
					fail(pairToken, "expected lexical:surface pair, got '" + pairToken.text + "'");
				rule.lexical = pairToken.text.substr(0, colon);
				rule.surface = pairToken.text.substr(colon + 1);

				const Token& opToken = take();
				if (opToken.text == "=>") rule.op = RuleOperator::ContextRestriction;
				else if (opToken.text == "<=") rule.op = RuleOperator::SurfaceCoercion;
				else if (opToken.text == "<=>") rule.op = RuleOperator::Composite;
				else if (opToken.text == "/<=") rule.op = RuleOperator::Exclusion;
				else fail(opToken, "expected one of => <= <=> /<=, got '" + opToken.text + "'");

				std::vector<AtomRef> refs;
				rule.left = parseAlternation(refs);
				const Token& underscore = take();
				if (underscore.text != "_") fail(underscore, "expected '_' marking the rule position");
				rule.right = parseAlternation(refs);

				if (pos_ < tokens_.size() && peek().text == "where")
				{
					++pos_;
					while (peek().text != ";" && peek().text != "matched")
					{
						VariableBinding b;
						const Token& var = take();
						b.variable = var.text;
						if (singleSymbol(var.text) && alphabet_->isDeclared(*singleSymbol(var.text)))
							fail(var, "variable '" + var.text + "' shadows a declared symbol");
						const Token& in = take();
						if (in.text != "in") fail(in, "expected 'in'");
						const Token& open = take();
						if (open.text != "(") fail(open, "expected '('");
						while (peek().text != ")")
						{
							const Token& v = take();
							checkSide(v.text, v, {}, false);
							b.values.push_back(v.text);
						}
						++pos_;
						if (b.values.empty()) fail(var, "variable '" + b.variable + "' has no values");
						rule.where.push_back(std::move(b));
					}
					if (peek().text == "matched")
					{
						++pos_;
						rule.matched = true;
						for (auto& b : rule.where)
						{
							if (b.values.size() != rule.where.front().values.size())
								fail(ruleStart_, "matched variables need equally long value lists");
						}
					}
				}
				const Token& semi = take();
				if (semi.text != ";") fail(semi, "expected ';'");

				checkSide(rule.lexical, pairToken, rule.where, true);
				checkSide(rule.surface, pairToken, rule.where, false);
				for (auto& r : refs)
				{
					checkSide(r.lexical, r.token, rule.where, true);
					checkSide(r.surface, r.token, rule.where, false);
				}
				try
				{
					detail::expandRule(*alphabet_, rule);
				}
				catch (const ParseError&)
				{
					throw;
				}
				catch (const Error& e)
				{
					fail(ruleStart_, e.what());
				}
				return rule;
			}

			std::vector<Token> tokens_;
			std::string source_;
			std::size_t pos_ = 0;
			const Alphabet* alphabet_ = nullptr;
			Token ruleStart_;
		};
	}

	RuleSet parseRules(std::string_view text, const std::string& sourceName)
	{
		return Parser(tokenize(text), sourceName).parse();
	}

	RuleSet loadRules(const std::filesystem::path& path)
	{
		std::ifstream in(path, std::ios::binary);
		if (!in) throw Error("cannot open rule file " + path.string());
		std::stringstream ss;
		ss << in.rdbuf();
		return parseRules(ss.str(), path.string());
	}
}
